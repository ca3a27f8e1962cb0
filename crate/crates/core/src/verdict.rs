//! Verdict lattices.
//!
//! [`Verdict3`] is the classic three-valued verdict domain of an abstract
//! monitor. [`Verdict6`] refines it for generalised monitors built from a
//! safety completion and a cosafety completion: besides the conclusive
//! `yes`/`no` it can report that one of them is out of reach
//! (`unknown_yes`, `unknown_no`) or that neither will ever be reached
//! (`giveup`).
//!
//! Both types carry an *information order* (`leq`): larger verdicts carry
//! more information, and impartial monitors only ever move up.

use core::fmt;

/// Three-valued verdict of an abstract monitor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Verdict3 {
    Yes,
    No,
    Unknown,
}

/// Six-valued verdict of a generalised monitor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Verdict6 {
    Yes,
    No,
    Unknown,
    /// No negative verdict is reachable any more.
    UnknownYes,
    /// No positive verdict is reachable any more.
    UnknownNo,
    /// No conclusive verdict is reachable any more.
    Giveup,
}

/// A `(safety, cosafety)` verdict pair that no pair of completion monitors
/// can produce, since the cosafety completion is contained in the safety
/// completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("inconsistent completion verdicts: safety={safety}, cosafety={cosafety}")]
pub struct InconsistentVerdicts {
    pub safety: Verdict3,
    pub cosafety: Verdict3,
}

impl Verdict3 {
    pub const ALL: [Verdict3; 3] = [Verdict3::Yes, Verdict3::No, Verdict3::Unknown];

    /// Information order: `unknown` is below both `yes` and `no`.
    pub fn leq(self, other: Verdict3) -> bool {
        self == other || self == Verdict3::Unknown
    }

    /// Verdict of the complement property: swaps `yes` and `no`.
    pub fn invert(self) -> Verdict3 {
        match self {
            Verdict3::Yes => Verdict3::No,
            Verdict3::No => Verdict3::Yes,
            Verdict3::Unknown => Verdict3::Unknown,
        }
    }

    pub fn is_conclusive(self) -> bool {
        self != Verdict3::Unknown
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict3::Yes => "yes",
            Verdict3::No => "no",
            Verdict3::Unknown => "unknown",
        }
    }
}

impl Verdict6 {
    pub const ALL: [Verdict6; 6] = [
        Verdict6::Yes,
        Verdict6::No,
        Verdict6::Unknown,
        Verdict6::UnknownYes,
        Verdict6::UnknownNo,
        Verdict6::Giveup,
    ];

    /// Information order on six verdicts.
    ///
    /// Covering pairs: `unknown < unknown_yes`, `unknown < unknown_no`,
    /// `unknown_yes < yes`, `unknown_yes < giveup`, `unknown_no < no`,
    /// `unknown_no < giveup`.
    pub fn leq(self, other: Verdict6) -> bool {
        use Verdict6::*;
        match (self, other) {
            (a, b) if a == b => true,
            (Unknown, _) => true,
            (UnknownYes, Yes | Giveup) => true,
            (UnknownNo, No | Giveup) => true,
            _ => false,
        }
    }

    /// `yes`, `no` and `giveup`: the maximal elements, after which a
    /// monitor can stop.
    pub fn is_final(self) -> bool {
        matches!(self, Verdict6::Yes | Verdict6::No | Verdict6::Giveup)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict6::Yes => "yes",
            Verdict6::No => "no",
            Verdict6::Unknown => "unknown",
            Verdict6::UnknownYes => "unknown_yes",
            Verdict6::UnknownNo => "unknown_no",
            Verdict6::Giveup => "giveup",
        }
    }

    /// Parses the lowercase wire name produced by [`Verdict6::as_str`].
    pub fn from_name(name: &str) -> Option<Verdict6> {
        Verdict6::ALL.into_iter().find(|v| v.as_str() == name)
    }
}

/// Combines the verdict of a safety-completion monitor (`safety`) with the
/// verdict of a cosafety-completion monitor (`cosafety`).
pub fn combine(safety: Verdict3, cosafety: Verdict3) -> Result<Verdict6, InconsistentVerdicts> {
    use Verdict3 as V;
    Ok(match (safety, cosafety) {
        (V::Yes, V::Yes) => Verdict6::Yes,
        (V::No, V::No) => Verdict6::No,
        (V::Yes, V::No) => Verdict6::Giveup,
        (V::Yes, V::Unknown) => Verdict6::UnknownYes,
        (V::Unknown, V::No) => Verdict6::UnknownNo,
        (V::Unknown, V::Unknown) => Verdict6::Unknown,
        (V::No, V::Yes) | (V::No, V::Unknown) | (V::Unknown, V::Yes) => {
            return Err(InconsistentVerdicts { safety, cosafety })
        }
    })
}

impl fmt::Display for Verdict3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Display for Verdict6 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Verdict3 as V3;
    use Verdict6 as V6;

    #[test]
    fn leq3_examples() {
        assert!(V3::Unknown.leq(V3::Yes));
        assert!(V3::Yes.leq(V3::Yes));
        assert!(!V3::Yes.leq(V3::No));
        assert!(!V3::No.leq(V3::Unknown));
    }

    #[test]
    fn leq6_examples() {
        assert!(V6::Unknown.leq(V6::Giveup));
        assert!(!V6::UnknownYes.leq(V6::No));
        assert!(V6::UnknownNo.leq(V6::Giveup));
    }

    /// Reflexive-transitive closure of the covering pairs, computed
    /// independently of `leq`.
    fn closure_of_covers() -> [[bool; 6]; 6] {
        let idx = |v: V6| V6::ALL.iter().position(|&w| w == v).unwrap();
        let covers = [
            (V6::Unknown, V6::UnknownYes),
            (V6::Unknown, V6::UnknownNo),
            (V6::UnknownYes, V6::Yes),
            (V6::UnknownYes, V6::Giveup),
            (V6::UnknownNo, V6::No),
            (V6::UnknownNo, V6::Giveup),
        ];
        let mut rel = [[false; 6]; 6];
        for (i, row) in rel.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in covers {
            rel[idx(a)][idx(b)] = true;
        }
        for k in 0..6 {
            for i in 0..6 {
                for j in 0..6 {
                    if rel[i][k] && rel[k][j] {
                        rel[i][j] = true;
                    }
                }
            }
        }
        rel
    }

    #[test]
    fn leq6_is_closure_of_covers_and_partial_order() {
        let rel = closure_of_covers();
        for (i, a) in V6::ALL.into_iter().enumerate() {
            for (j, b) in V6::ALL.into_iter().enumerate() {
                assert_eq!(a.leq(b), rel[i][j], "{a} <= {b}");
                if a.leq(b) && b.leq(a) {
                    assert_eq!(a, b);
                }
            }
        }
        let maximal: alloc::vec::Vec<_> =
            V6::ALL.into_iter().filter(|a| V6::ALL.iter().all(|b| !a.leq(*b) || a == b)).collect();
        assert_eq!(maximal, [V6::Yes, V6::No, V6::Giveup]);
        for v in V6::ALL {
            assert_eq!(v.is_final(), maximal.contains(&v));
        }
    }

    #[test]
    fn combine_table() {
        assert_eq!(combine(V3::Yes, V3::No), Ok(V6::Giveup));
        assert_eq!(combine(V3::Yes, V3::Yes), Ok(V6::Yes));
        assert_eq!(combine(V3::Unknown, V3::Unknown), Ok(V6::Unknown));
        assert_eq!(combine(V3::Yes, V3::Unknown), Ok(V6::UnknownYes));
        assert_eq!(combine(V3::Unknown, V3::No), Ok(V6::UnknownNo));
        assert_eq!(combine(V3::No, V3::No), Ok(V6::No));
        assert_eq!(combine(V3::No, V3::Yes), Err(InconsistentVerdicts { safety: V3::No, cosafety: V3::Yes }));
    }

    #[test]
    fn combine_exhaustive_properties() {
        let mut inconsistent = 0;
        for g in V3::ALL {
            for d in V3::ALL {
                match combine(g, d) {
                    Err(_) => inconsistent += 1,
                    Ok(v) => {
                        assert_eq!(v.is_final(), g.is_conclusive() && d.is_conclusive());
                    }
                }
            }
        }
        assert_eq!(inconsistent, 3);

        for g1 in V3::ALL {
            for d1 in V3::ALL {
                for g2 in V3::ALL {
                    for d2 in V3::ALL {
                        let (Ok(a), Ok(b)) = (combine(g1, d1), combine(g2, d2)) else {
                            continue;
                        };
                        if g1.leq(g2) && d1.leq(d2) {
                            assert!(a.leq(b), "monotonicity: {a} vs {b}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn wire_names_round_trip() {
        for v in V6::ALL {
            assert_eq!(V6::from_name(v.as_str()), Some(v));
        }
        assert_eq!(V6::UnknownYes.as_str(), "unknown_yes");
    }
}
