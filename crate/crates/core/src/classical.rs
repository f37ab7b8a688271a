//! Predicates on finite sets.
//!
//! A subset `U ⊆ X` is the map `X -> X + X` sending members to the left copy
//! and the rest to the right copy. Only the left part is stored; the right
//! part is its complement.

use std::fmt;

use crate::algebra::laws::{EffectAlgebra, EffectMonoid};
use crate::algebra::{
    boolean_powerset, enumerate_homomorphisms, mo_free, FiniteEffectAlgebra, DEFAULT_HOM_CAP,
};
use crate::error::{Error, Result};

/// Largest carrier [`predicate_algebra`] tabulates.
pub const MAX_TABULATED_CARRIER: usize = 10;
/// Largest `n` accepted by [`stone_states`].
pub const MAX_STONE_CARRIER: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinSet {
    labels: Vec<String>,
}

impl FinSet {
    /// `{0, ..., n-1}` labelled by position.
    pub fn new(n: usize) -> Self {
        Self {
            labels: (0..n).map(|i| i.to_string()).collect(),
        }
    }

    pub fn with_labels(labels: Vec<String>) -> Result<Self> {
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::Parse(format!("duplicate label `{l}`")));
            }
        }
        Ok(Self { labels })
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    /// `X + X`: left copy at indices `0..n`, right copy at `n..2n`.
    pub fn doubled(&self) -> FinSet {
        let left = self.labels.iter().map(|l| format!("inl({l})"));
        let right = self.labels.iter().map(|l| format!("inr({l})"));
        FinSet {
            labels: left.chain(right).collect(),
        }
    }

    pub fn check_index(&self, index: usize) -> Result<()> {
        if index < self.size() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index,
                size: self.size(),
            })
        }
    }
}

fn same_carrier(a: &FinSet, b: &FinSet) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::CarrierMismatch {
            left: a.size(),
            right: b.size(),
        })
    }
}

/// Coproduct side: `Left` is the truth side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TaggedElement {
    pub side: Side,
    pub index: usize,
}

impl TaggedElement {
    pub fn left(index: usize) -> Self {
        Self {
            side: Side::Left,
            index,
        }
    }

    pub fn right(index: usize) -> Self {
        Self {
            side: Side::Right,
            index,
        }
    }

    /// Position inside [`FinSet::doubled`] of a carrier of size `n`.
    pub fn to_index(self, n: usize) -> usize {
        match self.side {
            Side::Left => self.index,
            Side::Right => n + self.index,
        }
    }

    pub fn from_index(i: usize, n: usize) -> Self {
        if i < n {
            Self::left(i)
        } else {
            Self::right(i - n)
        }
    }
}

impl fmt::Display for TaggedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.side {
            Side::Left => write!(f, "left({})", self.index),
            Side::Right => write!(f, "right({})", self.index),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoolPredicate {
    carrier: FinSet,
    members: Vec<bool>,
}

impl BoolPredicate {
    pub fn from_members(carrier: FinSet, members: Vec<bool>) -> Result<Self> {
        if members.len() != carrier.size() {
            return Err(Error::CarrierMismatch {
                left: carrier.size(),
                right: members.len(),
            });
        }
        Ok(Self { carrier, members })
    }

    /// The subset with the given member indices.
    pub fn from_indices(carrier: FinSet, indices: &[usize]) -> Result<Self> {
        let mut members = vec![false; carrier.size()];
        for &i in indices {
            carrier.check_index(i)?;
            members[i] = true;
        }
        Ok(Self { carrier, members })
    }

    /// Subset encoded by the low bits of `mask`.
    pub fn from_mask(carrier: FinSet, mask: u64) -> Self {
        let members = (0..carrier.size()).map(|i| mask >> i & 1 == 1).collect();
        Self { carrier, members }
    }

    pub fn truth(carrier: FinSet) -> Self {
        let members = vec![true; carrier.size()];
        Self { carrier, members }
    }

    pub fn falsum(carrier: FinSet) -> Self {
        let members = vec![false; carrier.size()];
        Self { carrier, members }
    }

    pub fn carrier(&self) -> &FinSet {
        &self.carrier
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members[x]
    }

    pub fn members(&self) -> &[bool] {
        &self.members
    }

    pub fn indices(&self) -> Vec<usize> {
        (0..self.members.len())
            .filter(|&i| self.members[i])
            .collect()
    }

    pub fn to_mask(&self) -> u64 {
        self.members
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .fold(0, |acc, (i, _)| acc | 1 << i)
    }

    /// Complement `¬U`, obtained by swapping the coproduct sides.
    pub fn complement(&self) -> Self {
        Self {
            carrier: self.carrier.clone(),
            members: self.members.iter().map(|m| !m).collect(),
        }
    }

    /// `U ∩ V`, the multiplication of the Boolean effect monoid.
    pub fn and(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a && b)
    }

    fn zip(&self, other: &Self, f: impl Fn(bool, bool) -> bool) -> Result<Self> {
        same_carrier(&self.carrier, &other.carrier)?;
        Ok(Self {
            carrier: self.carrier.clone(),
            members: self
                .members
                .iter()
                .zip(&other.members)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    /// The predicate as an explicit map `X -> X + X`.
    pub fn as_map(&self) -> FinMap {
        let n = self.carrier.size();
        FinMap {
            source: self.carrier.clone(),
            target: self.carrier.doubled(),
            table: (0..n)
                .map(|x| {
                    if self.members[x] {
                        TaggedElement::left(x).to_index(n)
                    } else {
                        TaggedElement::right(x).to_index(n)
                    }
                })
                .collect(),
        }
    }
}

impl fmt::Display for BoolPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<&str> = self
            .indices()
            .into_iter()
            .map(|i| self.carrier.label(i))
            .collect();
        write!(f, "{{{}}}", labels.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinMap {
    source: FinSet,
    target: FinSet,
    table: Vec<usize>,
}

impl FinMap {
    pub fn new(source: FinSet, target: FinSet, table: Vec<usize>) -> Result<Self> {
        if table.len() != source.size() {
            return Err(Error::CarrierMismatch {
                left: source.size(),
                right: table.len(),
            });
        }
        for &y in &table {
            target.check_index(y)?;
        }
        Ok(Self {
            source,
            target,
            table,
        })
    }

    pub fn identity(carrier: FinSet) -> Self {
        let table = (0..carrier.size()).collect();
        Self {
            source: carrier.clone(),
            target: carrier,
            table,
        }
    }

    pub fn source(&self) -> &FinSet {
        &self.source
    }

    pub fn target(&self) -> &FinSet {
        &self.target
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &FinMap) -> Result<FinMap> {
        same_carrier(&self.target, &g.source)?;
        Ok(FinMap {
            source: self.source.clone(),
            target: g.target.clone(),
            table: self.table.iter().map(|&y| g.table[y]).collect(),
        })
    }

    /// `f + f : X + X -> Y + Y`.
    pub fn coproduct_map(&self) -> FinMap {
        let (n, m) = (self.source.size(), self.target.size());
        let table = (0..2 * n)
            .map(|i| {
                let t = TaggedElement::from_index(i, n);
                TaggedElement {
                    side: t.side,
                    index: self.table[t.index],
                }
                .to_index(m)
            })
            .collect();
        FinMap {
            source: self.source.doubled(),
            target: self.target.doubled(),
            table,
        }
    }
}

/// `U ⊕ V = U ∪ V`, defined only for disjoint `U`, `V`.
pub fn orthosum(p: &BoolPredicate, q: &BoolPredicate) -> Result<Option<BoolPredicate>> {
    same_carrier(&p.carrier, &q.carrier)?;
    if p.members.iter().zip(&q.members).any(|(&a, &b)| a && b) {
        return Ok(None);
    }
    p.zip(q, |a, b| a || b).map(Some)
}

/// Inverse image `f⁻¹(U)`.
pub fn substitute(f: &FinMap, q: &BoolPredicate) -> Result<BoolPredicate> {
    same_carrier(&f.target, &q.carrier)?;
    Ok(BoolPredicate {
        carrier: f.source.clone(),
        members: f.table.iter().map(|&y| q.members[y]).collect(),
    })
}

/// `⟨U?⟩(V) = U ∩ V`.
pub fn test_andthen(p: &BoolPredicate, q: &BoolPredicate) -> Result<BoolPredicate> {
    p.zip(q, |a, b| a && b)
}

/// `[U?](V) = U ⇒ V = ¬(U ∩ ¬V)`.
pub fn test_then(p: &BoolPredicate, q: &BoolPredicate) -> Result<BoolPredicate> {
    p.zip(q, |a, b| !(a && !b))
}

/// Comprehension `{x : x ∈ U}` with its inclusion into the carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comprehension {
    pub carrier: FinSet,
    pub inclusion: FinMap,
}

pub fn comprehension(p: &BoolPredicate) -> Comprehension {
    let indices = p.indices();
    let carrier = FinSet {
        labels: indices
            .iter()
            .map(|&i| p.carrier.label(i).to_string())
            .collect(),
    };
    let inclusion = FinMap {
        source: carrier.clone(),
        target: p.carrier.clone(),
        table: indices,
    };
    Comprehension { carrier, inclusion }
}

impl Comprehension {
    /// The factorization of `f` through the inclusion, when `f*(U)` is true.
    pub fn factor(&self, f: &FinMap) -> Option<FinMap> {
        if f.target != self.inclusion.target {
            return None;
        }
        let table = f
            .table
            .iter()
            .map(|&y| self.inclusion.table.iter().position(|&i| i == y))
            .collect::<Option<Vec<_>>>()?;
        Some(FinMap {
            source: f.source.clone(),
            target: self.carrier.clone(),
            table,
        })
    }
}

/// Sends `x` to the left copy when `x ∈ U`, to the right copy otherwise.
pub fn measure(p: &BoolPredicate, x: usize) -> Result<TaggedElement> {
    p.carrier.check_index(x)?;
    Ok(if p.members[x] {
        TaggedElement::left(x)
    } else {
        TaggedElement::right(x)
    })
}

/// Characteristic map of `U`; classically this is the predicate itself.
pub fn char_map(p: &BoolPredicate) -> FinMap {
    p.as_map()
}

/// The left subset of `X + X`.
pub fn omega(carrier: &FinSet) -> BoolPredicate {
    let n = carrier.size();
    BoolPredicate {
        carrier: carrier.doubled(),
        members: (0..2 * n).map(|i| i < n).collect(),
    }
}

/// Effect algebra of all subsets of `carrier`, tabulated through
/// [`orthosum`] and [`BoolPredicate::complement`]. Element ids are bitmasks.
pub fn predicate_algebra(carrier: &FinSet) -> Result<FiniteEffectAlgebra> {
    let n = carrier.size();
    if n > MAX_TABULATED_CARRIER {
        return Err(Error::TooLarge {
            what: "tabulated carrier",
            size: n as u128,
            cap: MAX_TABULATED_CARRIER as u128,
        });
    }
    let size = 1usize << n;
    let pred = |mask: usize| BoolPredicate::from_mask(carrier.clone(), mask as u64);
    let names = (0..size).map(|m| pred(m).to_string()).collect();
    FiniteEffectAlgebra::from_fn(
        names,
        0,
        size - 1,
        |x, y| {
            orthosum(&pred(x), &pred(y))
                .expect("same carrier")
                .map(|s| s.to_mask() as usize)
        },
        |x| pred(x).complement().to_mask() as usize,
    )
}

/// States of `X` as effect algebra homomorphisms `P(X) -> {0, 1}`.
///
/// Every homomorphism is checked to be evaluation at a point; the points
/// are returned in increasing order.
pub fn stone_states(n: usize) -> Result<Vec<usize>> {
    if n > MAX_STONE_CARRIER {
        return Err(Error::TooLarge {
            what: "Stone carrier",
            size: n as u128,
            cap: MAX_STONE_CARRIER as u128,
        });
    }
    let powerset = boolean_powerset(n)?;
    let two = mo_free(0);
    let homs = enumerate_homomorphisms(&powerset, &two, DEFAULT_HOM_CAP)?;
    let mut points = Vec::with_capacity(homs.len());
    for hom in &homs {
        let point = (0..n)
            .find(|&x| hom.apply(1 << x) == two.one())
            .ok_or_else(|| Error::NotAffine("homomorphism vanishes on all singletons".into()))?;
        let is_evaluation = powerset
            .elements()
            .all(|u| (hom.apply(u) == two.one()) == (u >> point & 1 == 1));
        if !is_evaluation {
            return Err(Error::NotAffine(format!(
                "homomorphism is not evaluation at {point}"
            )));
        }
        points.push(point);
    }
    points.sort_unstable();
    Ok(points)
}

/// A relation `3 -> 2` as a list of image sets, 1-based like the witness.
pub type Relation = Vec<Vec<usize>>;

/// Two relations and two distinct subsets with identical direct images,
/// showing that the "jointly monic" requirement fails for relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelWitness {
    pub p: Relation,
    pub q: Relation,
    pub u: Vec<usize>,
    pub v: Vec<usize>,
}

/// Direct image of `subset` along `r` (1-based elements, sorted output).
pub fn relation_image(r: &Relation, subset: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = subset
        .iter()
        .flat_map(|&x| r[x - 1].iter().copied())
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

pub fn rel_joint_monicity_counterexample() -> RelWitness {
    RelWitness {
        // p(1) = 1, p(2) = p(3) = 2
        p: vec![vec![1], vec![2], vec![2]],
        // q(1) = q(3) = 2, q(2) = 1
        q: vec![vec![2], vec![1], vec![2]],
        u: vec![1, 2],
        v: vec![1, 2, 3],
    }
}

impl RelWitness {
    /// `U ≠ V` but `p(U) = p(V)` and `q(U) = q(V)`.
    pub fn verify(&self) -> bool {
        self.u != self.v
            && relation_image(&self.p, &self.u) == relation_image(&self.p, &self.v)
            && relation_image(&self.q, &self.u) == relation_image(&self.q, &self.v)
    }
}

impl EffectAlgebra for BoolPredicate {
    fn zero_like(&self) -> Self {
        BoolPredicate::falsum(self.carrier.clone())
    }

    fn one_like(&self) -> Self {
        BoolPredicate::truth(self.carrier.clone())
    }

    fn ortho_sum(&self, other: &Self) -> Option<Self> {
        orthosum(self, other).ok().flatten()
    }

    fn perp(&self) -> Self {
        self.complement()
    }

    fn approx_eq(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }
}

impl EffectMonoid for BoolPredicate {
    fn multiply(&self, other: &Self) -> Self {
        self.and(other).expect("same carrier")
    }
}
