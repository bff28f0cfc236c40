use crate::exactla::Vector;

/// One failed instance of an identity: which law, on which basis tuple, and
/// the nonzero difference `lhs - rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub law: &'static str,
    /// 0-based basis indices the identity was evaluated on. Their meaning
    /// (which slot is an algebra or module index) is fixed per law.
    pub basis: Vec<usize>,
    pub defect: Vector,
}

/// Outcome of an axiom check. A check never stops at the first failure; it
/// reports every violated basis tuple.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Verdict {
    pub violations: Vec<Violation>,
    /// Non-fatal remarks, e.g. that a precondition did not hold.
    pub flags: Vec<String>,
}

impl Verdict {
    pub fn ok() -> Self {
        Self::default()
    }

    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, law: &'static str, basis: Vec<usize>, defect: Vector) {
        self.violations.push(Violation { law, basis, defect });
    }

    /// Records a violation only when `defect` is nonzero.
    pub fn check(&mut self, law: &'static str, basis: Vec<usize>, defect: Vector) {
        if !crate::exactla::is_zero_vector(&defect) {
            self.push(law, basis, defect);
        }
    }

    pub fn flag(&mut self, note: impl Into<String>) {
        self.flags.push(note.into());
    }

    pub fn merge(&mut self, other: Verdict) {
        self.violations.extend(other.violations);
        self.flags.extend(other.flags);
    }

    pub fn violations_of<'a>(&'a self, law: &'a str) -> impl Iterator<Item = &'a Violation> + 'a {
        self.violations.iter().filter(move |v| v.law == law)
    }

    pub fn laws_violated(&self) -> Vec<&'static str> {
        let mut laws: Vec<&'static str> = Vec::new();
        for v in &self.violations {
            if !laws.contains(&v.law) {
                laws.push(v.law);
            }
        }
        laws
    }
}
