//! Pass/fail reports for the verification suites.

use std::fmt;

use crate::algebra::{LambdaSeries, TauPoly};

/// Failures beyond this many are counted but not stored.
const MAX_STORED_FAILURES: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub key: String,
    pub lambda_exp: Option<i32>,
    pub tau_exp: Option<i32>,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub name: String,
    pub checks: usize,
    pub failure_count: usize,
    pub failures: Vec<Failure>,
    /// `(key, reason)` for checks that could not be decided.
    pub skipped: Vec<(String, String)>,
}

impl Report {
    pub fn new(name: impl Into<String>) -> Self {
        Report { name: name.into(), checks: 0, failure_count: 0, failures: Vec::new(), skipped: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    pub fn first_failure(&self) -> Option<&Failure> {
        self.failures.first()
    }

    pub fn pass(&mut self) {
        self.checks += 1;
    }

    pub fn fail(&mut self, failure: Failure) {
        self.checks += 1;
        self.failure_count += 1;
        if self.failures.len() < MAX_STORED_FAILURES {
            self.failures.push(failure);
        }
    }

    pub fn skip(&mut self, key: impl Into<String>, reason: impl Into<String>) {
        self.skipped.push((key.into(), reason.into()));
    }

    /// Record a boolean check with display strings for both sides.
    pub fn check(&mut self, ok: bool, key: impl Into<String>, expected: impl fmt::Display, actual: impl fmt::Display) {
        if ok {
            self.pass();
        } else {
            self.fail(Failure {
                key: key.into(),
                lambda_exp: None,
                tau_exp: None,
                expected: expected.to_string(),
                actual: actual.to_string(),
            });
        }
    }

    pub fn check_tau(&mut self, key: impl Into<String>, lambda_exp: Option<i32>, expected: &TauPoly, actual: &TauPoly) {
        if expected == actual {
            self.pass();
            return;
        }
        let d = expected - actual;
        let t = d.valuation();
        let e = t.map(|t| expected.coeff(t)).unwrap_or_default();
        let a = t.map(|t| actual.coeff(t)).unwrap_or_default();
        self.fail(Failure {
            key: key.into(),
            lambda_exp,
            tau_exp: t,
            expected: e.to_string(),
            actual: a.to_string(),
        });
    }

    /// Compare two series through `λ^upto`; skipped if either is not known that far.
    pub fn check_series(&mut self, key: impl Into<String>, expected: &LambdaSeries, actual: &LambdaSeries, upto: i32) {
        let key = key.into();
        if expected.order() < upto || actual.order() < upto {
            self.skip(key, "insufficient order");
            return;
        }
        match expected.truncate(upto).first_difference(&actual.truncate(upto)) {
            None => self.pass(),
            Some((l, t)) => {
                let (e, a) = (expected.coeff(l).coeff(t), actual.coeff(l).coeff(t));
                self.fail(Failure {
                    key,
                    lambda_exp: Some(l),
                    tau_exp: Some(t),
                    expected: e.to_string(),
                    actual: a.to_string(),
                });
            }
        }
    }

    pub fn merge(&mut self, other: Report) {
        self.checks += other.checks;
        self.failure_count += other.failure_count;
        for f in other.failures {
            if self.failures.len() < MAX_STORED_FAILURES {
                self.failures.push(f);
            }
        }
        self.skipped.extend(other.skipped);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} ({} checks, {} failed, {} skipped)",
            self.name,
            if self.passed() { "PASS" } else { "FAIL" },
            self.checks,
            self.failure_count,
            self.skipped.len()
        )?;
        if let Some(x) = self.first_failure() {
            write!(f, "; first failure at {}", x.key)?;
            if let Some(l) = x.lambda_exp {
                write!(f, " λ^{}", l)?;
            }
            if let Some(t) = x.tau_exp {
                write!(f, " τ^{}", t)?;
            }
            write!(f, ": expected {}, got {}", x.expected, x.actual)?;
        }
        Ok(())
    }
}
