use super::{Elem, FiniteEffectAlgebra};
use crate::error::{Error, Result};

/// Largest `n` accepted by [`boolean_powerset`].
pub const MAX_POWERSET_BITS: usize = 16;

/// The free effect algebra `MO(n)` on an `n`-element set.
///
/// Universe is `{0, 1}` plus two incomparable copies `a_i`, `a_i'` of the
/// generators; the complement swaps copies and the only nontrivial sums are
/// `a_i ⊕ a_i' = 1`. Ids: `0`, `1`, then `a_i` at `2 + 2i` and `a_i'` at
/// `3 + 2i`.
pub fn mo_free(n: usize) -> FiniteEffectAlgebra {
    let mut names = vec!["0".to_string(), "1".to_string()];
    for i in 0..n {
        names.push(format!("a{i}"));
        names.push(format!("a{i}'"));
    }
    let generator = |x: Elem| (x >= 2).then(|| ((x - 2) / 2, (x - 2) % 2));
    FiniteEffectAlgebra::from_fn(
        names,
        0,
        1,
        |z, w| {
            if w == 0 {
                return Some(z);
            }
            if z == 0 {
                return Some(w);
            }
            match (generator(z), generator(w)) {
                (Some((i, side_z)), Some((j, side_w))) if i == j && side_z != side_w => Some(1),
                _ => None,
            }
        },
        |x| match x {
            0 => 1,
            1 => 0,
            x => x ^ 1,
        },
    )
    .expect("MO tables are well formed")
}

/// Effect algebra of subsets of an `n`-element set: disjoint union as the
/// partial sum and complement as orthocomplement. Element ids are bitmasks.
pub fn boolean_powerset(n: usize) -> Result<FiniteEffectAlgebra> {
    if n > MAX_POWERSET_BITS {
        return Err(Error::TooLarge {
            what: "powerset exponent",
            size: n as u128,
            cap: MAX_POWERSET_BITS as u128,
        });
    }
    let size = 1usize << n;
    let full = size - 1;
    let names = (0..size).map(|mask| subset_name(mask, n)).collect();
    FiniteEffectAlgebra::from_fn(
        names,
        0,
        full,
        |x, y| (x & y == 0).then_some(x | y),
        |x| full & !x,
    )
}

fn subset_name(mask: usize, n: usize) -> String {
    let members: Vec<String> = (0..n)
        .filter(|i| mask & (1 << i) != 0)
        .map(|i| i.to_string())
        .collect();
    format!("{{{}}}", members.join(","))
}

/// Cartesian product with componentwise operations. Id of `(a, b)` is
/// `a * |e2| + b`.
pub fn product(e1: &FiniteEffectAlgebra, e2: &FiniteEffectAlgebra) -> FiniteEffectAlgebra {
    let m = e2.len();
    let names = e1
        .elements()
        .flat_map(|a| e2.elements().map(move |b| (a, b)))
        .map(|(a, b)| format!("({},{})", e1.name(a), e2.name(b)))
        .collect();
    FiniteEffectAlgebra::from_fn(
        names,
        e1.zero() * m + e2.zero(),
        e1.one() * m + e2.one(),
        |x, y| {
            let a = e1.sum(x / m, y / m)?;
            let b = e2.sum(x % m, y % m)?;
            Some(a * m + b)
        },
        |x| e1.perp(x / m) * m + e2.perp(x % m),
    )
    .expect("product tables are well formed")
}

/// Coproduct (amalgamated sum): disjoint union with the two bottoms and the
/// two tops identified. Sums are defined only against `0` or inside one
/// summand.
pub fn coproduct(e1: &FiniteEffectAlgebra, e2: &FiniteEffectAlgebra) -> FiniteEffectAlgebra {
    #[derive(Clone, Copy)]
    enum Origin {
        Zero,
        One,
        Left(Elem),
        Right(Elem),
    }

    let mut origins = vec![Origin::Zero, Origin::One];
    let mut names = vec!["0".to_string(), "1".to_string()];
    let mut left_id = vec![None; e1.len()];
    let mut right_id = vec![None; e2.len()];
    for x in e1.elements().filter(|&x| x != e1.zero() && x != e1.one()) {
        left_id[x] = Some(origins.len());
        origins.push(Origin::Left(x));
        names.push(format!("l({})", e1.name(x)));
    }
    for y in e2.elements().filter(|&y| y != e2.zero() && y != e2.one()) {
        right_id[y] = Some(origins.len());
        origins.push(Origin::Right(y));
        names.push(format!("r({})", e2.name(y)));
    }

    let embed_left = |x: Elem| {
        if x == e1.zero() {
            0
        } else if x == e1.one() {
            1
        } else {
            left_id[x].unwrap()
        }
    };
    let embed_right = |y: Elem| {
        if y == e2.zero() {
            0
        } else if y == e2.one() {
            1
        } else {
            right_id[y].unwrap()
        }
    };

    FiniteEffectAlgebra::from_fn(
        names,
        0,
        1,
        |z, w| match (origins[z], origins[w]) {
            (Origin::Zero, _) => Some(w),
            (_, Origin::Zero) => Some(z),
            (Origin::Left(x), Origin::Left(u)) => e1.sum(x, u).map(embed_left),
            (Origin::Right(y), Origin::Right(v)) => e2.sum(y, v).map(embed_right),
            _ => None,
        },
        |z| match origins[z] {
            Origin::Zero => 1,
            Origin::One => 0,
            Origin::Left(x) => embed_left(e1.perp(x)),
            Origin::Right(y) => embed_right(e2.perp(y)),
        },
    )
    .expect("coproduct tables are well formed")
}

/// Downset `↓x = {y : y ≤ x}` with `x` as top, relative complement
/// `y ↦ x ⊖ y`, and `y ⊕ z` defined iff it is defined in `ea` and `≤ x`.
pub fn downset(ea: &FiniteEffectAlgebra, x: Elem) -> Result<FiniteEffectAlgebra> {
    if x >= ea.len() {
        return Err(Error::IndexOutOfRange {
            index: x,
            size: ea.len(),
        });
    }
    let members: Vec<Elem> = ea.elements().filter(|&y| ea.leq(y, x)).collect();
    let local = |y: Elem| members.iter().position(|&m| m == y);
    let names = members.iter().map(|&y| ea.name(y).to_string()).collect();
    let zero = local(ea.zero()).expect("0 is below every element");
    let one = local(x).expect("x is below itself");
    FiniteEffectAlgebra::from_fn(
        names,
        zero,
        one,
        |a, b| {
            let s = ea.sum(members[a], members[b])?;
            if ea.leq(s, x) {
                local(s)
            } else {
                None
            }
        },
        |a| {
            let c = ea.minus(x, members[a]).expect("member lies below x");
            local(c).expect("x ⊖ y lies below x")
        },
    )
}

/// Opposite algebra: `1` as zero, `⊘` as sum, same complement.
pub fn opposite(ea: &FiniteEffectAlgebra) -> FiniteEffectAlgebra {
    FiniteEffectAlgebra::from_fn(
        ea.names().to_vec(),
        ea.one(),
        ea.zero(),
        |x, y| ea.owedge(x, y),
        |x| ea.perp(x),
    )
    .expect("opposite tables are well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AxiomReport;

    #[test]
    fn mo_free_sizes_and_sums() {
        let mo0 = mo_free(0);
        assert_eq!(mo0.len(), 2);
        assert_eq!(mo0.sum(1, 1), None);
        assert_eq!(mo0.sum(0, 1), Some(1));

        let mo1 = mo_free(1);
        assert_eq!(mo1.len(), 4);
        let (a, b) = (mo1.find("a0").unwrap(), mo1.find("a0'").unwrap());
        assert_eq!(mo1.sum(a, b), Some(mo1.one()));
        assert_eq!(mo1.sum(a, a), None);
        assert_eq!(mo1.sum(mo1.one(), a), None);

        assert_eq!(mo_free(3).len(), 8);
        assert!(mo_free(3).check_axioms().is_pass());
    }

    #[test]
    fn mo_free_dump_is_stable() {
        let expected = "\
0 + 0 = 0
0 + 1 = 1
0 + a0 = a0
0 + a0' = a0'
a0 + a0' = 1
";
        assert_eq!(mo_free(1).dump(), expected);
    }

    #[test]
    fn coproduct_of_mo1_has_six_elements() {
        let c = coproduct(&mo_free(1), &mo_free(1));
        assert_eq!(c.len(), 6);
        assert_eq!(c.check_axioms(), AxiomReport::Pass);
        let l = c.find("l(a0)").unwrap();
        let r = c.find("r(a0)").unwrap();
        assert_eq!(c.sum(l, r), None);
        assert_eq!(c.sum(l, c.perp(l)), Some(c.one()));
    }

    #[test]
    fn downset_of_zero_is_degenerate() {
        let d = downset(&mo_free(0), 0).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d.zero(), d.one());
        assert!(d.check_axioms().is_pass());
    }

    #[test]
    fn downset_in_powerset() {
        let p3 = boolean_powerset(3).unwrap();
        let d = downset(&p3, 0b011).unwrap();
        assert_eq!(d.len(), 4);
        assert!(d.check_axioms().is_pass());
        assert!(downset(&p3, 99).is_err());
    }

    #[test]
    fn opposite_is_involutive() {
        for ea in [mo_free(2), boolean_powerset(2).unwrap()] {
            assert_eq!(opposite(&opposite(&ea)), ea);
            assert!(opposite(&ea).check_axioms().is_pass());
        }
    }

    #[test]
    fn powerset_small_cases() {
        let p0 = boolean_powerset(0).unwrap();
        assert_eq!(p0.len(), 1);
        assert_eq!(p0.zero(), p0.one());
        assert!(p0.check_axioms().is_pass());

        let p1 = boolean_powerset(1).unwrap();
        assert_eq!(p1.len(), 2);
        assert_eq!(p1.sum(1, 1), None);
        assert!(boolean_powerset(17).is_err());
    }

    #[test]
    fn product_is_componentwise() {
        let p = product(&mo_free(1), &boolean_powerset(1).unwrap());
        assert_eq!(p.len(), 8);
        assert!(p.check_axioms().is_pass());
        assert_eq!(p.name(p.one()), "(1,{0})");
    }
}
