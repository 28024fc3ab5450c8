//! Pass/fail records shared by the verification drivers.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub computed: String,
    pub expected: String,
    pub passed: bool,
}

impl Check {
    /// Passes when `computed == expected`.
    pub fn equal(name: impl Into<String>, computed: impl ToString, expected: impl ToString) -> Self {
        let (computed, expected) = (computed.to_string(), expected.to_string());
        Self { name: name.into(), passed: computed == expected, computed, expected }
    }

    pub fn holds(name: impl Into<String>, ok: bool) -> Self {
        Self::equal(name, ok, true)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {} {} {}", self.name, self.computed, self.expected)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}
