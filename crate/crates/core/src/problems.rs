//! Built-in sequence pairs with the interval endpoints they are known to
//! produce.

use crate::series::SeqSpec;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedProblem {
    pub name: &'static str,
    pub r: SeqSpec,
    pub t: SeqSpec,
    /// First index where `r` and `t` may differ.
    pub k: usize,
    pub b: u64,
    /// Expected `gr(r)` and `gr(t)`, six significant digits.
    pub expected_lower: &'static str,
    pub expected_upper: &'static str,
    pub note: &'static str,
}

pub const PROBLEM_NAMES: &[&str] = &["prop34", "prop35a", "prop35b", "prop35c", "sec4"];

fn spec(s: &str) -> SeqSpec {
    s.parse().expect("built-in sequence")
}

/// Looks up a problem by name.
pub fn named_problem(name: &str) -> Option<NamedProblem> {
    let p = match name {
        // Closures of A = U^{12,12} ∪ U^{21,12}: proper (r) and A' total (t).
        "prop34" => NamedProblem {
            name: "prop34",
            r: spec("1,1,3,5;6"),
            t: spec("1,1,3,13;8"),
            k: 4,
            b: 3,
            expected_lower: "2.48187",
            expected_upper: "2.69284",
            note: "A = U12,12 + U21,12; t adds the 8 uncovered length-4 indecomposables",
        },
        "prop35a" => NamedProblem {
            name: "prop35a",
            r: spec("1,1,3,13;8"),
            t: spec("1,1,3,13,71;11"),
            k: 5,
            b: 4,
            expected_lower: "2.69284",
            expected_upper: "3.03024",
            note: "A1 = A-three plus all indecomposables of length <= 5",
        },
        // The upper sequence is sometimes printed as 1,1,3,13,461,11,...
        // with the length-5 count missing; only the reading with 71 gives
        // gr(t) = 3.41108.
        "prop35b" => NamedProblem {
            name: "prop35b",
            r: spec("1,1,3,13,71;8"),
            t: spec("1,1,3,13,71,461;11"),
            k: 6,
            b: 4,
            expected_lower: "3.02440",
            expected_upper: "3.41108",
            note: "A2 = A-three plus all indecomposables of length <= 6",
        },
        "prop35c" => NamedProblem {
            name: "prop35c",
            r: spec("1,1,3,13,71,461;8"),
            t: spec("1,1,3,13,71,461,3447;11"),
            k: 7,
            b: 4,
            expected_lower: "3.41035",
            expected_upper: "3.79450",
            note: "A3 = A-three plus all indecomposables of length <= 7",
        },
        "sec4" => NamedProblem {
            name: "sec4",
            r: spec("1,1,2,3;4"),
            t: spec("1,1,2,3;5,4"),
            k: 5,
            b: 1,
            expected_lower: "2.30524",
            expected_upper: "2.32331",
            note: "odd-index members of U12,12; perfect set between xi and zeta",
        },
        _ => return None,
    };
    Some(p)
}

impl NamedProblem {
    /// A deliberately wrong copy (last prefix term of `r` raised by one), for
    /// exercising failure paths.
    pub fn corrupted(&self) -> NamedProblem {
        let mut prefix = self.r.prefix().to_vec();
        if let Some(last) = prefix.last_mut() {
            *last += 1;
        }
        let r = SeqSpec::new(prefix, self.r.tail().to_vec()).expect("positive terms");
        NamedProblem { r, ..self.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_names_resolve() {
        for name in PROBLEM_NAMES {
            let p = named_problem(name).unwrap();
            assert_eq!(&p.name, name);
            assert!(p.r.dominated_by(&p.t));
        }
        assert!(named_problem("prop99").is_none());
    }

    #[test]
    fn corruption_changes_r() {
        let p = named_problem("prop34").unwrap();
        assert_eq!(p.corrupted().r.to_string(), "1,1,3,6;6");
    }
}
