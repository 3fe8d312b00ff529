//! Golden cases shared by the CLI and acceptance tests.

use std::path::{Path, PathBuf};

pub const QUARTIC: &str = "y^4+x*y^3+x*y^2+x^2*y+x^2+1";

/// One golden case per subcommand; names double as golden file stems.
pub fn cases() -> Vec<(&'static str, Vec<&'static str>)> {
    vec![
        ("parse", vec!["parse", "--expr", "(x+y)^2-2*x*y"]),
        ("parse_zero", vec!["parse", "--expr", "0", "--vars", "x,y"]),
        ("groebner", vec!["groebner", "--gens", "x^2-y;x*y-1", "--order", "grevlex"]),
        ("normal_form", vec!["normal-form", "--poly", "x^3", "--gens", "x^2-y;x*y-1"]),
        ("deg_v", vec!["deg-v", "--poly", "x^3*y", "--vars", "x,y", "--gens", "y^2-x"]),
        ("noether_check", vec!["noether-check", "--gens", "x*y-1"]),
        ("noether_find", vec!["noether-find", "--gens", "x*y-1", "--seed", "7"]),
        ("fiber_count", vec!["fiber-count", "--curve", QUARTIC, "--x0", "3/2", "--x0-im", "1"]),
        ("mass_check", vec!["mass-check", "--curve", QUARTIC, "--seed", "11"]),
        ("newton_polygon", vec!["newton-polygon", "--curve", QUARTIC]),
        ("puiseux", vec!["puiseux", "--curve", QUARTIC, "--segment", "1", "--root", "0", "--depth", "4"]),
        ("lelong_degree", vec!["lelong-degree", "--curve", QUARTIC, "--poly", "y"]),
        ("balayage_check", vec!["balayage-check", "--curve", "x^2-y^2-1", "--poly", "x-y"]),
        ("moving_check", vec!["moving-check", "--curve", QUARTIC, "--poly", "y", "--seed", "3"]),
        ("bezout", vec!["bezout", "--p1", QUARTIC, "--p2", "y-1", "--seed", "1"]),
        ("count_solutions", vec!["count-solutions", "--p1", "y^2-x", "--p2", "y-x"]),
        ("resultant", vec!["resultant", "--p", "y^2-x", "--q", "y-x", "--var", "y"]),
    ]
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn json_args(args: &[&'static str]) -> Vec<&'static str> {
    let mut a = args.to_vec();
    a.push("--json");
    a
}
