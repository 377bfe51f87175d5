//! Topology of the covering surface built from a permutation Hurwitz system.
//!
//! Each orbit of the monodromy group on the sheets is one connected
//! component. Its Euler characteristic is `2|O| - Σ_k (|O| - c_k(O))`, where
//! `c_k(O)` counts the cycles of `a_k` restricted to `O`.

use serde::{Deserialize, Serialize};

use crate::algebra::Permutation;
use crate::error::{Error, Result};
use crate::hurwitz::PermSystem;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Component {
    pub sheets: Vec<usize>,
    pub euler: i64,
    pub genus: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoveringSurface {
    pub degree: usize,
    pub branch_count: usize,
    pub components: Vec<Component>,
}

impl CoveringSurface {
    pub fn euler(&self) -> i64 {
        self.components.iter().map(|c| c.euler).sum()
    }

    pub fn is_connected(&self) -> bool {
        self.components.len() == 1
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// Builds the covering surface of a closing permutation system.
pub fn build_covering(s: &PermSystem) -> Result<CoveringSurface> {
    let prod = s.total_monodromy();
    if !prod.is_identity() {
        return Err(Error::NotClosing(prod.to_string()));
    }
    Ok(covering_from_monodromy(s.degree(), s.entries()))
}

/// Component data for arbitrary meridian images; closing is not checked.
pub(crate) fn covering_from_monodromy(d: usize, entries: &[Permutation]) -> CoveringSurface {
    let components = crate::hurwitz::orbits_of(d, entries)
        .into_iter()
        .map(|orbit| {
            let size = orbit.len() as i64;
            let deficiency: i64 = entries
                .iter()
                .map(|a| size - a.cycle_count_on(&orbit) as i64)
                .sum();
            let euler = 2 * size - deficiency;
            Component {
                sheets: orbit,
                euler,
                genus: (2 - euler) / 2,
            }
        })
        .collect();
    CoveringSurface {
        degree: d,
        branch_count: entries.len(),
        components,
    }
}

/// Every component has even Euler characteristic, which for simple systems
/// means each orbit meets an even number of branch points.
pub fn branch_parity_check(s: &PermSystem) -> bool {
    covering_from_monodromy(s.degree(), s.entries())
        .components
        .iter()
        .all(|c| c.euler % 2 == 0)
}

/// Classification of connected simple coverings of the sphere: two of the
/// same degree are equivalent iff they have the same number of branch points.
pub fn covering_equivalent(s: &PermSystem, t: &PermSystem) -> Result<bool> {
    if s.degree() != t.degree() {
        return Err(Error::DegreeMismatch {
            left: s.degree(),
            right: t.degree(),
        });
    }
    crate::hurwitz::check_normalizable(s)?;
    crate::hurwitz::check_normalizable(t)?;
    Ok(s.len() == t.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hurwitz::HurwitzSystem;

    fn ps(d: usize, e: &[&str]) -> PermSystem {
        HurwitzSystem::parse_entries(d, e).unwrap()
    }

    #[test]
    fn examples() {
        let c = build_covering(&ps(2, &["(1 2)", "(1 2)"])).unwrap();
        assert_eq!(c.components.len(), 1);
        assert_eq!((c.components[0].euler, c.components[0].genus), (2, 0));

        let c = build_covering(&ps(
            3,
            &["(1 2)", "(1 2)", "(1 2)", "(1 2)", "(2 3)", "(2 3)"],
        ))
        .unwrap();
        assert_eq!((c.components[0].euler, c.components[0].genus), (0, 1));

        let c = build_covering(&ps(4, &["(1 2)", "(3 4)", "(3 4)", "(1 2)"])).unwrap();
        assert_eq!(c.components.len(), 2);
        assert_eq!(c.components[0].sheets, vec![1, 2]);
        assert_eq!(c.components[1].sheets, vec![3, 4]);
        assert!(c.components.iter().all(|x| x.euler == 2 && x.genus == 0));

        assert!(build_covering(&ps(3, &["(1 2)", "(2 3)"])).is_err());
    }

    #[test]
    fn parity_and_equivalence() {
        assert!(branch_parity_check(&ps(2, &["(1 2)", "(1 2)"])));
        let a = ps(3, &["(1 2)", "(1 2)", "(1 2)", "(1 2)", "(2 3)", "(2 3)"]);
        let b = ps(3, &["(1 2)", "(2 3)", "(2 3)", "(1 2)", "(1 2)", "(1 2)"]);
        let c = ps(3, &["(1 2)", "(1 2)", "(2 3)", "(2 3)"]);
        assert!(covering_equivalent(&a, &b).unwrap());
        assert!(covering_equivalent(&a, &a).unwrap());
        assert!(!covering_equivalent(&a, &c).unwrap());
        let bad = ps(3, &["(1 2)", "(1 2)"]);
        assert!(covering_equivalent(&a, &bad).is_err());
    }

    #[test]
    fn json_shape() {
        let c = build_covering(&ps(2, &["(1 2)", "(1 2)"])).unwrap();
        let v: serde_json::Value = serde_json::from_str(&c.to_json()).unwrap();
        assert_eq!(v["degree"], 2);
        assert_eq!(v["branch_count"], 2);
        assert_eq!(v["components"][0]["genus"], 0);
    }
}
