use super::{Elem, FiniteEffectAlgebra};
use crate::error::{Error, Result};

/// Default cap on `|target|^|source|` for [`enumerate_homomorphisms`].
pub const DEFAULT_HOM_CAP: u128 = 10_000_000;

/// A homomorphism of effect algebras, as a total table `source -> target`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EaHom {
    pub map: Vec<Elem>,
}

impl EaHom {
    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x]
    }
}

/// Checks `f(1) = 1` and, for every `x ⊥ y`, `f(x) ⊥ f(y)` with
/// `f(x ⊕ y) = f(x) ⊕ f(y)`.
pub fn is_homomorphism(
    source: &FiniteEffectAlgebra,
    target: &FiniteEffectAlgebra,
    map: &[Elem],
) -> bool {
    if map.len() != source.len() || map.iter().any(|&y| y >= target.len()) {
        return false;
    }
    if map[source.one()] != target.one() {
        return false;
    }
    source.elements().all(|x| {
        source.elements().all(|y| match source.sum(x, y) {
            Some(s) => target.sum(map[x], map[y]) == Some(map[s]),
            None => true,
        })
    })
}

/// All homomorphisms `source -> target`.
///
/// The result is the same as filtering every total map, but partial
/// assignments are pruned as soon as a constraint among the assigned
/// elements fails. Refuses when `|target|^|source|` exceeds `cap`.
pub fn enumerate_homomorphisms(
    source: &FiniteEffectAlgebra,
    target: &FiniteEffectAlgebra,
    cap: u128,
) -> Result<Vec<EaHom>> {
    let candidates = (target.len() as u128)
        .checked_pow(source.len() as u32)
        .unwrap_or(u128::MAX);
    if candidates > cap {
        return Err(Error::TooLarge {
            what: "homomorphism search space",
            size: candidates,
            cap,
        });
    }

    // Constraint (x, y, x ⊕ y) becomes checkable once its largest id is assigned.
    let n = source.len();
    let mut constraints: Vec<Vec<(Elem, Elem, Elem)>> = vec![Vec::new(); n];
    for x in source.elements() {
        for y in source.elements() {
            if let Some(s) = source.sum(x, y) {
                constraints[x.max(y).max(s)].push((x, y, s));
            }
        }
    }

    let mut found = Vec::new();
    let mut map = vec![0; n];
    search(source, target, &constraints, 0, &mut map, &mut found);
    Ok(found)
}

fn search(
    source: &FiniteEffectAlgebra,
    target: &FiniteEffectAlgebra,
    constraints: &[Vec<(Elem, Elem, Elem)>],
    next: Elem,
    map: &mut Vec<Elem>,
    found: &mut Vec<EaHom>,
) {
    if next == source.len() {
        found.push(EaHom { map: map.clone() });
        return;
    }
    for image in target.elements() {
        if next == source.one() && image != target.one() {
            continue;
        }
        map[next] = image;
        let consistent = constraints[next]
            .iter()
            .all(|&(x, y, s)| target.sum(map[x], map[y]) == Some(map[s]));
        if consistent {
            search(source, target, constraints, next + 1, map, found);
        }
    }
}
