//! User-defined problems from a small TOML file.
//!
//! ```toml
//! delta  = 0.1
//! kernel = "constant"        # or an expression in x (the radius), e.g. "3/0.001"
//! f      = "16*exp(4*x)"     # source on [-1, 1]
//! g      = "exp(4*x)"        # constraint data on the interaction collar
//! exact  = "exp(4*x)"        # optional, enables error reporting
//! # self_term = 600.0        # optional analytic ∫γ; quadrature otherwise
//! ```

use crate::expr;
use nlspectral::{Kernel, NonlocalProblem};
use serde::Deserialize;
use std::path::Path;
use std::sync::Arc;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    delta: f64,
    kernel: String,
    f: String,
    g: String,
    exact: Option<String>,
    self_term: Option<f64>,
}

#[derive(Debug)]
pub struct CustomProblem {
    pub problem: NonlocalProblem,
    pub delta: f64,
}

fn parse_field(name: &str, src: &str) -> Result<expr::Expr, String> {
    expr::parse(src).map_err(|e| format!("config field `{name}`: {e} in `{src}`"))
}

pub fn load_problem(path: &Path, delta_override: Option<f64>) -> Result<CustomProblem, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    let raw: RawConfig =
        toml::from_str(&text).map_err(|e| format!("config {}: {e}", path.display()))?;
    let delta = delta_override.unwrap_or(raw.delta);
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(format!("config delta {delta} must be positive"));
    }
    let kernel = if raw.kernel.trim() == "constant" {
        Kernel::constant(delta).map_err(|e| e.to_string())?
    } else {
        let profile = parse_field("kernel", &raw.kernel)?;
        Kernel::new(delta, move |r| profile.eval(r), raw.self_term).map_err(|e| e.to_string())?
    };
    let f = parse_field("f", &raw.f)?;
    let g = parse_field("g", &raw.g)?;
    let exact = match &raw.exact {
        Some(src) => {
            let e = parse_field("exact", src)?;
            Some(Arc::new(move |x: f64| e.eval(x)) as nlspectral::RealFn)
        }
        None => None,
    };
    let problem = NonlocalProblem::new(kernel, move |x| f.eval(x), move |x| g.eval(x), exact);
    Ok(CustomProblem { problem, delta })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_config(content: &str) -> tempfile::NamedTempFile {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        file.write_all(content.as_bytes()).unwrap();
        file
    }

    #[test]
    fn loads_constant_kernel_problem() {
        let file = write_config(
            "delta = 0.1\nkernel = \"constant\"\nf = \"16*exp(4*x)\"\ng = \"exp(4*x)\"\nexact = \"exp(4*x)\"\n",
        );
        let custom = load_problem(file.path(), None).unwrap();
        assert_eq!(custom.delta, 0.1);
        assert!((custom.problem.kernel().self_term() - 600.0).abs() < 1e-9);
        assert!((custom.problem.source(0.0) - 16.0).abs() < 1e-12);
        assert!(custom.problem.exact().is_some());
    }

    #[test]
    fn expression_kernel_with_quadrature_self_term() {
        let file = write_config("delta = 0.5\nkernel = \"24\"\nf = \"x\"\ng = \"0\"\n");
        let custom = load_problem(file.path(), None).unwrap();
        // ∫_{-δ}^{δ} 24 ds = 24
        assert!((custom.problem.kernel().self_term() - 24.0).abs() < 1e-10);
        assert!(custom.problem.exact().is_none());
    }

    #[test]
    fn delta_override_wins() {
        let file = write_config("delta = 0.1\nkernel = \"constant\"\nf = \"x\"\ng = \"0\"\n");
        let custom = load_problem(file.path(), Some(0.25)).unwrap();
        assert_eq!(custom.delta, 0.25);
        assert!((custom.problem.kernel().horizon() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn missing_file_and_bad_fields_error() {
        assert!(load_problem(Path::new("/nonexistent/missing.toml"), None).is_err());
        let bad_expr =
            write_config("delta = 0.1\nkernel = \"constant\"\nf = \"foo(x)\"\ng = \"0\"\n");
        let err = load_problem(bad_expr.path(), None).unwrap_err();
        assert!(err.contains("config field `f`"), "{err}");
        let unknown_key =
            write_config("delta = 0.1\nkernel = \"constant\"\nf = \"x\"\ng = \"0\"\nbogus = 1\n");
        assert!(load_problem(unknown_key.path(), None).is_err());
    }
}
