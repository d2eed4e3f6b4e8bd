//! Named example presentations: group algebras of the built-in groups, their
//! duals and Drinfeld doubles.

use crate::error::{Error, Result};
use crate::hopf::{drinfeld_double, group_algebra, Group, HopfPresentation, RMatrix, BUILTIN_GROUPS};
use crate::ring::{make_ring, RingDescriptor};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    GroupAlgebra,
    Dual,
    Double,
}

#[derive(Clone, Debug)]
pub struct Example {
    pub name: String,
    pub group: &'static str,
    pub variant: Variant,
    pub hopf: HopfPresentation,
    /// Canonical R-matrix, for doubles.
    pub r: Option<RMatrix>,
}

pub fn field_name(ring: &RingDescriptor) -> String {
    format!("F{}", ring.residue_field_size())
}

fn builtin_name(name: &str) -> Option<&'static str> {
    BUILTIN_GROUPS.iter().copied().find(|&g| g == name)
}

/// One example over `GF(p^m)`.
pub fn generate(group: &str, p: u64, m: usize, variant: Variant) -> Result<Example> {
    let group = builtin_name(group).ok_or_else(|| Error::NotAGroup(format!("unknown group {group:?}")))?;
    let ring = make_ring(p, 1, m, None)?;
    let kg = group_algebra(ring, &Group::builtin(group).expect("builtin"))?;
    let base = format!("{}[{group}]", field_name(&ring));
    Ok(match variant {
        Variant::GroupAlgebra => Example { name: base, group, variant, hopf: kg, r: None },
        Variant::Dual => Example { name: format!("dual {base}"), group, variant, hopf: kg.dual(), r: None },
        Variant::Double => {
            let (d, r) = drinfeld_double(&kg)?;
            Example { name: format!("D({base})"), group, variant, hopf: d, r: Some(r) }
        }
    })
}

/// Every built-in group over `F_p`, `p ∈ primes`, `p ∤ |G|`, with its dual and,
/// up to dimension `max_double_dim`, its double.
pub fn semisimple_corpus(primes: &[u64], max_double_dim: usize) -> Result<Vec<Example>> {
    let mut out = Vec::new();
    for name in BUILTIN_GROUPS {
        let order = Group::builtin(name).expect("builtin").order();
        for &p in primes {
            if order as u64 % p == 0 {
                continue;
            }
            out.push(generate(name, p, 1, Variant::GroupAlgebra)?);
            out.push(generate(name, p, 1, Variant::Dual)?);
            if order * order <= max_double_dim {
                out.push(generate(name, p, 1, Variant::Double)?);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_and_sizes() {
        let d = generate("S3", 7, 1, Variant::Double).unwrap();
        assert_eq!(d.name, "D(F7[S3])");
        assert_eq!(d.hopf.dim(), 36);
        assert!(d.r.is_some());
        assert_eq!(generate("C3", 2, 2, Variant::Dual).unwrap().name, "dual F4[C3]");
        assert!(generate("C9", 5, 1, Variant::GroupAlgebra).is_err());
        let corpus = semisimple_corpus(&[3], 16).unwrap();
        assert!(corpus.iter().all(|e| e.hopf.dim() <= 16 && e.hopf.ring().p() == 3));
        assert!(!corpus.iter().any(|e| e.group == "S3"));
    }
}
