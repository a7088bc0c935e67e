//! Reporting for the exit-gate checks in `tests/acceptance.rs`: each
//! criterion prints one `PASS` or `FAIL` line, then indented details.

pub struct Gate {
    name: &'static str,
    details: Vec<String>,
    ok: bool,
}

impl Gate {
    pub fn new(name: &'static str) -> Self {
        Gate { name, details: Vec::new(), ok: true }
    }

    /// Records a sub-check; any failing one fails the criterion.
    pub fn check(&mut self, ok: bool, what: impl Into<String>) {
        self.ok &= ok;
        self.details.push(format!("{} {}", if ok { "ok " } else { "BAD" }, what.into()));
    }

    pub fn note(&mut self, what: impl Into<String>) {
        self.details.push(format!("    {}", what.into()));
    }

    pub fn ok(&self) -> bool {
        self.ok
    }

    /// Prints the verdict line and details, returning the verdict.
    pub fn finish(self) -> bool {
        println!("{}", self.render());
        self.ok
    }

    pub fn render(&self) -> String {
        let mut out = format!("{} {}", if self.ok { "PASS" } else { "FAIL" }, self.name);
        for d in &self.details {
            out.push_str(&format!("\n    {d}"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_bad_check_fails_the_gate() {
        let mut g = Gate::new("demo");
        g.check(true, "first");
        assert!(g.ok());
        g.check(false, "second");
        g.note("context");
        assert!(!g.ok());
        assert_eq!(g.render(), "FAIL demo\n    ok  first\n    BAD second\n        context");
    }
}
