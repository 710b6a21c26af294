//! Bookkeeping for the acceptance run: each criterion fills a [`Sheet`]
//! of sub-checks and passes only if every line does.

use std::time::Duration;
use surfloss_bem::suites::Check;

pub fn rel(a: f64, b: f64) -> f64 {
    (a / b - 1.0).abs()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sheet {
    pub lines: Vec<String>,
    pub ok: bool,
}

impl Default for Sheet {
    fn default() -> Self {
        Sheet { lines: Vec::new(), ok: true }
    }
}

impl Sheet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn check(&mut self, pass: bool, what: impl Into<String>) {
        let what = what.into();
        self.ok &= pass;
        self.lines.push(format!("    {} {what}", if pass { "ok  " } else { "MISS" }));
    }

    /// Relative agreement.
    pub fn close(&mut self, got: f64, want: f64, tol: f64, what: &str) {
        let e = rel(got, want);
        self.check(e <= tol, format!("{what}: {got:.4e} vs {want:.4e} (rel {e:.2e}, tol {tol:.1e})"));
    }

    pub fn within(&mut self, got: f64, lo: f64, hi: f64, what: &str) {
        self.check((lo..=hi).contains(&got), format!("{what}: {got:.4} in [{lo}, {hi}]"));
    }

    pub fn runtime(&mut self, took: Duration, limit: Duration) {
        self.check(took < limit, format!("runtime {:.3} s < {} s", took.as_secs_f64(), limit.as_secs_f64()));
    }

    pub fn bem(&mut self, checks: &[Check]) {
        for c in checks {
            self.check(
                c.pass,
                format!("{}: {:.4e} vs {:.4e} (err {:.2e}, tol {:.1e})", c.name, c.computed, c.reference, c.error, c.tolerance),
            );
        }
    }
}
