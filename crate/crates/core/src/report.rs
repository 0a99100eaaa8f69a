//! Residual reports shared by the verification routines.

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub tol: f64,
    pub passed: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, residual: f64, tol: f64) -> Self {
        Check { name: name.into(), residual, tol, passed: residual <= tol }
    }

    /// A check whose outcome is a boolean rather than a residual.
    pub fn flag(name: impl Into<String>, ok: bool) -> Self {
        Check { name: name.into(), residual: if ok { 0.0 } else { 1.0 }, tol: 0.0, passed: ok }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report { suite: suite.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, name: impl Into<String>, residual: f64, tol: f64) {
        self.checks.push(Check::new(name, residual, tol));
    }

    pub fn push_check(&mut self, check: Check) {
        self.checks.push(check);
    }

    /// Appends the checks of `other`, prefixing their names.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.name = format!("{prefix}{}", c.name);
            self.checks.push(c);
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().fold(0.0, |m, c| if c.residual.is_nan() { f64::NAN } else { m.max(c.residual) })
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}
