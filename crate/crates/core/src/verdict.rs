//! The three-valued outcome of a check.
//!
//! `Certified` means the property holds and the run constructed evidence
//! within the truncation. `Refuted` means an explicit counterexample exists.
//! `Consistent` means every computed invariant agrees with the property but
//! the method cannot certify it at this truncation.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Refuted,
    Consistent,
    Certified,
}

impl Verdict {
    /// Conjunction: refutation dominates, certification needs both sides.
    pub fn and(self, other: Verdict) -> Verdict {
        self.min(other)
    }

    /// Caps at `Consistent`; used when a method step loses certainty.
    pub fn weaken(self) -> Verdict {
        self.min(Verdict::Consistent)
    }

    pub fn is_certified(self) -> bool {
        self == Verdict::Certified
    }

    pub fn is_refuted(self) -> bool {
        self == Verdict::Refuted
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::Refuted => "REFUTED",
            Verdict::Consistent => "CONSISTENT",
            Verdict::Certified => "CERTIFIED",
        };
        write!(f, "{s}")
    }
}

/// Conjunction over a list, `Certified` when empty.
pub fn all_of(verdicts: impl IntoIterator<Item = Verdict>) -> Verdict {
    verdicts.into_iter().fold(Verdict::Certified, Verdict::and)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_behaviour() {
        use Verdict::*;
        assert_eq!(Certified.and(Consistent), Consistent);
        assert_eq!(Refuted.and(Certified), Refuted);
        assert_eq!(all_of([Certified, Certified]), Certified);
        assert_eq!(all_of([]), Certified);
        assert_eq!(Certified.weaken(), Consistent);
        assert_eq!(Refuted.weaken(), Refuted);
    }

    #[test]
    fn serializes_as_screaming_case() {
        assert_eq!(serde_json::to_string(&Verdict::Certified).unwrap(), "\"CERTIFIED\"");
        assert_eq!(
            serde_json::from_str::<Verdict>("\"REFUTED\"").unwrap(),
            Verdict::Refuted
        );
    }
}
