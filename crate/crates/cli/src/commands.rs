use std::fmt::Write;

use lelongkit::bezout::{self, BezoutReport, SolutionCount};
use lelongkit::error::{Error, ParseError};
use lelongkit::groebner::{self, DEFAULT_PAIR_BUDGET};
use lelongkit::lelong::{self, BalayageReport, Exponent, LelongReport};
use lelongkit::monomial::{MonomialOrder, OrderKind};
use lelongkit::newton::{self, plot};
use lelongkit::noether::{self, NoetherReport, SearchConfig};
use lelongkit::parse::{parse_poly, parse_system, parse_var_list, serialize_poly};
use lelongkit::poly::MultiPoly;
use lelongkit::report::Provenance;
use lelongkit::resultant::resultant;
use lelongkit::roots::format_complex;
use lelongkit::scalar::{format_rational, parse_rational, Gaussian, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::{Command, Common, OrderArg};

pub struct Outcome {
    pub text: String,
    pub result: Value,
    pub warning: Option<String>,
    pub exit_code: u8,
}

impl Outcome {
    fn new(text: String, result: Value) -> Self {
        Outcome { text, result, warning: None, exit_code: 0 }
    }
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report types serialize")
}

/// Parsed inputs shared by every command.
struct Inputs<'a> {
    common: &'a Common,
    vars: Vec<String>,
    system: Vec<(String, MultiPoly)>,
}

impl<'a> Inputs<'a> {
    fn load(common: &'a Common, prov: &mut Provenance) -> Result<Self, Error> {
        let (vars, system) = match &common.system {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))?;
                let sys = parse_system(&text)?;
                prov.inputs.push(("system".into(), path.display().to_string()));
                (sys.vars, sys.sources.into_iter().zip(sys.polys).collect())
            }
            None => (parse_var_list(&common.vars)?, Vec::new()),
        };
        prov.vars = vars.clone();
        prov.order = order_kind(common.order).name().to_string();
        prov.seed = common.seed;
        Ok(Inputs { common, vars, system })
    }

    fn poly(&self, prov: &mut Provenance, name: &str, text: &str) -> Result<MultiPoly, Error> {
        prov.inputs.push((name.to_string(), text.to_string()));
        Ok(parse_poly(text, &self.vars)?)
    }

    /// The flag value, or else entry `index` of the system file.
    fn required(&self, prov: &mut Provenance, name: &str, flag: &Option<String>, index: usize) -> Result<MultiPoly, Error> {
        match flag {
            Some(text) => self.poly(prov, name, text),
            None => self
                .system
                .get(index)
                .map(|(_, p)| p.clone())
                .ok_or_else(|| Error::Usage(format!("missing --{name} (or a system file with at least {} polynomials)", index + 1))),
        }
    }

    fn list(&self, prov: &mut Provenance, gens: &Option<String>) -> Result<Vec<MultiPoly>, Error> {
        match gens {
            Some(text) => {
                prov.inputs.push(("gens".into(), text.clone()));
                text.split(';')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|s| parse_poly(s, &self.vars).map_err(Error::from))
                    .collect()
            }
            None if !self.system.is_empty() => Ok(self.system.iter().map(|(_, p)| p.clone()).collect()),
            None => Err(Error::Usage("missing --gens (or --system)".into())),
        }
    }

    fn order(&self) -> MonomialOrder {
        MonomialOrder::new(order_kind(self.common.order), self.vars.len())
    }

    fn budget(&self) -> usize {
        self.common.pair_budget.unwrap_or(DEFAULT_PAIR_BUDGET)
    }

    fn seed(&self) -> u64 {
        self.common.seed.unwrap_or(0)
    }

    fn search(&self, attempts: usize) -> SearchConfig {
        SearchConfig { seed: self.seed(), attempts, pair_budget: self.budget() }
    }
}

fn order_kind(o: OrderArg) -> OrderKind {
    match o {
        OrderArg::GradedLex => OrderKind::GradedLex,
        OrderArg::Grevlex => OrderKind::Grevlex,
    }
}

fn rational(text: &str, what: &str) -> Result<Rational, Error> {
    parse_rational(text.trim()).ok_or_else(|| Error::Usage(format!("{what}: `{text}` is not a rational number")))
}

pub fn run(command: &Command, prov: &mut Provenance) -> Result<Outcome, Error> {
    let inputs = Inputs::load(command.common(), prov)?;
    let io = &inputs;
    match command {
        Command::Parse { expr, .. } => {
            let p = io.required(prov, "expr", expr, 0)?;
            let text = serialize_poly(&p, &io.order());
            let result = json!({
                "canonical": text,
                "terms": p.num_terms(),
                "degree": p.degree().to_string(),
            });
            Ok(Outcome::new(format!("{text}\n"), result))
        }
        Command::Groebner { gens, .. } => {
            let g = io.list(prov, gens)?;
            let order = io.order();
            let basis = groebner::buchberger_with_budget(&g, &order, io.budget())?.reduce_basis();
            let lines: Vec<String> = basis.generators.iter().map(|p| serialize_poly(p, &order)).collect();
            let mut text = String::new();
            for l in &lines {
                let _ = writeln!(text, "{l}");
            }
            let result = json!({ "basis": lines, "reduced": basis.reduced, "unit_ideal": basis.is_unit_ideal() });
            Ok(Outcome::new(text, result))
        }
        Command::NormalForm { poly, gens, .. } | Command::DegV { poly, gens, .. } => {
            let p = io.poly(prov, "poly", poly)?;
            let g = io.list(prov, gens)?;
            let order = io.order();
            let basis = groebner::buchberger_with_budget(&g, &order, io.budget())?.reduce_basis();
            let nf = basis.normal_form(&p)?;
            let nf_text = serialize_poly(&nf, &order);
            if matches!(command, Command::DegV { .. }) {
                let d = groebner::deg_v(&p, &basis)?;
                let result = json!({ "deg_v": d.to_string(), "normal_form": nf_text });
                Ok(Outcome::new(format!("deg_V = {d}\nnormal form: {nf_text}\n"), result))
            } else {
                let result = json!({ "normal_form": nf_text, "in_ideal": nf.is_zero() });
                Ok(Outcome::new(format!("{nf_text}\n"), result))
            }
        }
        Command::NoetherCheck { gens, m, .. } => {
            let g = io.list(prov, gens)?;
            let m = m.unwrap_or(io.vars.len().saturating_sub(g.len()));
            let r = noether::check_noether(&g, m)?;
            Ok(noether_outcome(&r, io, false))
        }
        Command::NoetherFind { gens, attempts, .. } => {
            let g = io.list(prov, gens)?;
            let r = noether::find_noether(&g, &io.search(*attempts))?;
            Ok(noether_outcome(&r, io, true))
        }
        Command::FiberCount { curve, x0, x0_im, .. } => {
            let p = io.required(prov, "curve", curve, 0)?;
            prov.inputs.push(("x0".into(), format!("{x0}+{x0_im}i")));
            let z = Gaussian::new(rational(x0, "--x0")?, rational(x0_im, "--x0-im")?);
            let pts = noether::fiber_points(&p, &z)?;
            let shown: Vec<String> = pts.iter().map(|y| format_complex(*y, 9)).collect();
            let mut text = format!("fiber over x0 = {z}: {} points\n", pts.len());
            for y in &shown {
                let _ = writeln!(text, "  y = {y}");
            }
            Ok(Outcome::new(text, json!({ "x0": z.to_string(), "count": pts.len(), "points": shown })))
        }
        Command::MassCheck { curve, samples, .. } => {
            let p = io.required(prov, "curve", curve, 0)?;
            let r = noether::mass_check(&p, *samples, io.seed())?;
            let counts: Vec<usize> = r.samples.iter().map(|s| s.count).collect();
            let (lo, hi) = (counts.iter().min().copied().unwrap_or(0), counts.iter().max().copied().unwrap_or(0));
            let text = format!(
                "deg(V) = {}\nsamples: {} regular points on |x| = 1 ({} rejected)\nfiber counts: min {lo}, max {hi}, constant {}\nconsistent with deg(V): {}\nmass: {}\n",
                r.degree, r.samples.len(), r.rejected, r.constant, r.consistent, r.mass
            );
            let mut out = Outcome::new(text, to_value(&r));
            if !r.consistent {
                out.exit_code = 2;
                out.warning = Some("fiber counts differ from deg(V)".into());
            }
            Ok(out)
        }
        Command::NewtonPolygon { curve, svg, .. } => {
            let p = io.required(prov, "curve", curve, 0)?;
            let (pt, poly) = newton::polygon_at_infinity(&p)?;
            let bs = newton::branch_set_unchecked(&p)?;
            let pt_text = serialize_poly(&pt, &MonomialOrder::graded_lex(2));
            let rendered_svg = plot::svg(&poly);
            let result = json!({
                "transformed": pt_text,
                "polygon": to_value(&poly),
                "branches": to_value(&bs),
                "width_matches_degree": bs.total == p.degree_in(1).unwrap_or(0),
                "svg": rendered_svg,
            });
            if *svg {
                return Ok(Outcome::new(rendered_svg, result));
            }
            let mut text = format!("P~(s,t) = {pt_text}\n\n{}\n", plot::ascii(&poly));
            text.push_str(&branch_table(&bs));
            Ok(Outcome::new(text, result))
        }
        Command::Puiseux { curve, segment, root, depth, precision, .. } => {
            let p = io.required(prov, "curve", curve, 0)?;
            let r = newton::extend_series(&p, *segment, *root, *depth, *precision)?;
            let mut text = format!("segment {} root {} (multiplicity {})\n", r.segment_index, r.root_index, r.multiplicity);
            for (k, s) in r.series.iter().enumerate() {
                let terms: Vec<String> =
                    s.terms.iter().map(|t| format!("({})*x^({})", t.text, format_rational(&t.exponent))).collect();
                let _ = writeln!(text, "branch {k}: y = {}{}", terms.join(" + "), if s.exact { "" } else { " + ..." });
                let _ = writeln!(text, "  ramification {}, exact {}", s.ramification, s.exact);
                if let Some(res) = s.residuals.last() {
                    let _ = writeln!(text, "  relative residual at x = 1e3: {res:.3e}");
                }
            }
            Ok(Outcome::new(text, to_value(&r)))
        }
        Command::LelongDegree { curve, poly, .. } => {
            let p = io.required(prov, "curve", curve, 0)?;
            let q = io.poly(prov, "poly", poly)?;
            let r = lelong::lelong_degree(&q, &p)?;
            Ok(Outcome::new(lelong_text(&r), to_value(&r)))
        }
        Command::BalayageCheck { curve, poly, .. } => {
            let p = io.required(prov, "curve", curve, 0)?;
            let q = io.poly(prov, "poly", poly)?;
            let r = lelong::classify_balayage(&q, &p)?;
            Ok(Outcome::new(balayage_text(&r), to_value(&r)))
        }
        Command::MovingCheck { curve, poly, t, samples, .. } => {
            let p = io.required(prov, "curve", curve, 0)?;
            let q = io.poly(prov, "poly", poly)?;
            let ts: Vec<Rational> = match t {
                Some(list) => {
                    prov.inputs.push(("t".into(), list.clone()));
                    list.split(',').map(|s| rational(s, "--t")).collect::<Result<_, _>>()?
                }
                None => {
                    let mut rng = ChaCha8Rng::seed_from_u64(io.seed());
                    (0..*samples)
                        .map(|_| Rational::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=4).into()))
                        .collect()
                }
            };
            let r = lelong::moving_invariance(&q, &p, &ts)?;
            let mut text = format!("t = 0: {}\n", r.base.display());
            for s in &r.samples {
                let _ = writeln!(
                    text,
                    "t = {}: {}{}{}",
                    format_rational(&s.t),
                    match (&s.value, &s.error) {
                        (Some(v), _) => v.display(),
                        (None, e) => format!("undefined ({})", e.as_deref().unwrap_or("")),
                    },
                    if s.equal || s.value.is_none() { "" } else { "  (differs)" },
                    if s.non_generic { "  (non-generic)" } else { "" }
                );
            }
            let _ = writeln!(text, "all equal: {}", r.all_equal);
            Ok(Outcome::new(text, to_value(&r)))
        }
        Command::Bezout { p1, p2, .. } => {
            let a = io.required(prov, "p1", p1, 0)?;
            let b = io.required(prov, "p2", p2, 1)?;
            let r = bezout::affine_bezout(&a, &b, &io.search(64))?;
            let mut out = Outcome::new(bezout_text(&r), to_value(&r));
            if r.oracle_count.is_none() {
                out.exit_code = 2;
                out.warning = Some("the curves share a component; the intersection is not finite".into());
            }
            Ok(out)
        }
        Command::CountSolutions { p1, p2, .. } => {
            let a = io.required(prov, "p1", p1, 0)?;
            let b = io.required(prov, "p2", p2, 1)?;
            let c = bezout::count_solutions(&a, &b)?;
            Ok(Outcome::new(count_text(&c), to_value(&c)))
        }
        Command::Resultant { p, q, var, .. } => {
            let a = io.required(prov, "p", p, 0)?;
            let b = io.required(prov, "q", q, 1)?;
            let index = io
                .vars
                .iter()
                .position(|v| v == var)
                .ok_or_else(|| Error::Parse(ParseError::BadDeclaration(format!("`{var}` is not a declared variable"))))?;
            let r = resultant(&a, &b, index)?;
            let text = serialize_poly(&r, &io.order());
            Ok(Outcome::new(format!("{text}\n"), json!({ "eliminated": var, "resultant": text })))
        }
    }
}

fn noether_outcome(r: &NoetherReport, io: &Inputs, search: bool) -> Outcome {
    let order = io.order();
    let g: Vec<String> = r.g_list.iter().map(|p| serialize_poly(p, &order)).collect();
    let l: Vec<Vec<String>> = r.linear_map.iter().map(|row| row.iter().map(format_rational).collect()).collect();
    let reason = r.failure_reason.map(|f| f.name());
    let mut text = format!("verdict: {}\n", if r.verdict { "pass" } else { "fail" });
    if let Some(reason) = reason {
        let _ = writeln!(text, "reason: {reason}");
    }
    if let Some(i) = r.failing_index {
        let _ = writeln!(text, "failing generator: {}", i + 1);
    }
    if search {
        let rows: Vec<String> = l.iter().map(|row| format!("[{}]", row.join(", "))).collect();
        let _ = writeln!(text, "L = [{}]  (z = L w)", rows.join(", "));
        let _ = writeln!(text, "attempts: {}", r.attempts);
    }
    for (j, p) in g.iter().enumerate() {
        let _ = writeln!(text, "g_{} = {p}", j + 1);
    }
    if r.verdict {
        let d: Vec<String> = r.d_list.iter().map(|d| d.to_string()).collect();
        let _ = writeln!(text, "d = [{}]", d.join(", "));
        if let Some(a) = &r.growth_a {
            let _ = writeln!(text, "A = {}", format_rational(a));
        }
        if let Some(deg) = r.degree {
            let _ = writeln!(text, "deg(V) = {deg}");
        }
    }
    let result = json!({
        "verdict": r.verdict,
        "failure_reason": reason,
        "failing_index": r.failing_index,
        "split_m": r.split_m,
        "linear_map": l,
        "g_list": g,
        "d_list": r.d_list,
        "growth_a": r.growth_a.as_ref().map(format_rational),
        "degree": r.degree,
        "attempts": r.attempts,
        "irreducibility_assumed": r.irreducibility_assumed,
    });
    Outcome::new(text, result)
}

fn branch_table(bs: &newton::BranchSet) -> String {
    let mut text = format!("{:<8} {:<6} {:<6} {:<24} {}\n", "segment", "gamma", "width", "edge polynomial", "roots");
    for e in &bs.entries {
        let roots: Vec<String> = e
            .coeff_roots
            .iter()
            .map(|r| if r.multiplicity > 1 { format!("{} (x{})", r.display(), r.multiplicity) } else { r.display() })
            .collect();
        let _ = writeln!(
            text,
            "{:<8} {:<6} {:<6} {:<24} {}",
            e.segment_index,
            format_rational(&e.gamma),
            e.width,
            e.edge_poly.format_with("c"),
            roots.join(", ")
        );
    }
    let _ = writeln!(text, "total width {}", bs.total);
    text
}

fn exponent_text(e: &Exponent) -> String {
    match e {
        Exponent::Exact { value } => format_rational(value),
        Exponent::Bracket { lower, upper } => format!("[{}, {}]", format_rational(lower), format_rational(upper)),
    }
}

fn lelong_text(r: &LelongReport) -> String {
    let mut text = format!("deg_L = {}  ({})\n", r.value.display(), serde_json::to_value(r.method).unwrap().as_str().unwrap());
    let _ = writeln!(text, "normal form: {}", r.normal_form);
    let _ = writeln!(text, "{:<8} {:<5} {:<6} {:<6} {:<22} {}", "segment", "root", "gamma", "width", "coefficient", "exponent");
    for b in &r.per_branch {
        let _ = writeln!(
            text,
            "{:<8} {:<5} {:<6} {:<6} {:<22} {}{}",
            b.segment_index,
            b.root_index,
            format_rational(&b.gamma),
            b.width,
            b.coefficient,
            exponent_text(&b.growth_exponent_of_p),
            if b.cancelled { "  (cancelled)" } else { "" }
        );
    }
    if let Some(n) = &r.norm_value {
        let _ = writeln!(text, "norm check: deg_x Res_y / deg = {}", format_rational(n));
    }
    for c in &r.caveats {
        let _ = writeln!(text, "caveat: {}", serde_json::to_value(c).unwrap().as_str().unwrap());
    }
    let _ = writeln!(text, "mass: {}", r.mass);
    text
}

fn balayage_text(r: &BalayageReport) -> String {
    let mut text = format!("{:<8} {:<5} {:<6} {:<10} {:<14} {}\n", "segment", "root", "width", "exponent", "class", "limit");
    for b in &r.branches {
        let _ = writeln!(
            text,
            "{:<8} {:<5} {:<6} {:<10} {:<14} {}",
            b.segment_index,
            b.root_index,
            b.width,
            exponent_text(&b.exponent),
            serde_json::to_value(b.class).unwrap().as_str().unwrap(),
            b.limit.as_deref().unwrap_or("-")
        );
    }
    let _ = writeln!(text, "verdict: {}", if r.safe { "safe" } else { "unsafe" });
    text
}

fn value_text(v: &Option<lelong::LelongValue>) -> String {
    v.as_ref().map_or("-".to_string(), |v| v.display())
}

fn bezout_text(r: &BezoutReport) -> String {
    let mut text = format!("{:<12} {:<34} {}\n", "route", "computation", "points");
    let inf: Vec<String> = r
        .infinity_points
        .iter()
        .map(|p| format!("{}x{}", p.point, p.multiplicity.map_or("?".to_string(), |m| m.to_string())))
        .collect();
    let sum: Option<u32> = r.infinity_points.iter().map(|p| p.multiplicity).sum();
    let projective = match sum {
        Some(s) if !inf.is_empty() => format!("{} - {} at {}", r.projective_total, s, inf.join(", ")),
        Some(_) => format!("{} (none at infinity)", r.projective_total),
        None => format!("{} with {}", r.projective_total, inf.join(", ")),
    };
    let affine = sum.map_or("-".to_string(), |s| (r.projective_total - s as u64).to_string());
    let _ = writeln!(text, "{:<12} {:<34} {}", "projective", projective, affine);
    for route in &r.routes {
        let tag = format!("V({})", route.curve);
        let computation = match (&route.error, route.factors.as_slice()) {
            (Some(e), _) => format!("failed: {e}"),
            (None, [a, b, ..]) => format!("{}·{}", a.degree.display(), b.degree.display()),
            _ => "-".to_string(),
        };
        let _ = writeln!(text, "{:<12} {:<34} {}", tag, computation, value_text(&route.bound));
    }
    let oracle = match (r.oracle_count, r.multiplicity_total) {
        (Some(c), Some(m)) => format!("{c} distinct, {m} with multiplicity"),
        _ => "not finite".to_string(),
    };
    let _ = writeln!(text, "{:<12} {:<34} {}", "oracle", "Res_y, squarefree, fibers", oracle);
    let _ = writeln!(text, "affine bound: {}", value_text(&r.affine_bound));
    let _ = writeln!(text, "consistent: {}", r.consistency);
    for c in &r.caveats {
        let _ = writeln!(text, "caveat: {c}");
    }
    text
}

fn count_text(c: &SolutionCount) -> String {
    let mut text = format!("distinct solutions: {}\nwith multiplicity: {}\n", c.distinct, c.multiplicity_total);
    let _ = writeln!(text, "Res_y = {}", c.resultant);
    for p in &c.points {
        let _ = writeln!(text, "  (x, y) = ({}, {})", p.x, p.y);
    }
    for cv in &c.caveats {
        let _ = writeln!(text, "caveat: {cv}");
    }
    text
}
