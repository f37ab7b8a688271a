//! Finite effect algebras given by explicit tables.
//!
//! Elements are small integer ids with a side table of display names. The
//! partial sum is stored as a dense `n x n` table of `Option<Elem>`, `None`
//! marking an undefined sum.

mod constructions;
mod homs;
pub mod laws;

use std::fmt;

use crate::error::{Error, Result};

pub use constructions::{boolean_powerset, coproduct, downset, mo_free, opposite, product};
pub use homs::{enumerate_homomorphisms, is_homomorphism, EaHom, DEFAULT_HOM_CAP};

/// Element id inside a [`FiniteEffectAlgebra`].
pub type Elem = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteEffectAlgebra {
    names: Vec<String>,
    zero: Elem,
    one: Elem,
    sum: Vec<Option<Elem>>,
    perp: Vec<Elem>,
}

impl FiniteEffectAlgebra {
    /// Builds an algebra from explicit tables. Only structure is validated
    /// here (sizes, ids in range); use [`check_axioms`](Self::check_axioms)
    /// for the laws.
    pub fn new(
        names: Vec<String>,
        zero: Elem,
        one: Elem,
        sum: Vec<Vec<Option<Elem>>>,
        perp: Vec<Elem>,
    ) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::MalformedTable("empty universe".into()));
        }
        if zero >= n || one >= n {
            return Err(Error::MalformedTable(format!(
                "zero {zero} or one {one} outside universe of size {n}"
            )));
        }
        if sum.len() != n || sum.iter().any(|row| row.len() != n) {
            return Err(Error::MalformedTable(format!("sum table is not {n}x{n}")));
        }
        if perp.len() != n {
            return Err(Error::MalformedTable(format!(
                "perp table has {} entries, expected {n}",
                perp.len()
            )));
        }
        for (x, row) in sum.iter().enumerate() {
            for (y, z) in row.iter().enumerate() {
                if let Some(z) = *z {
                    if z >= n {
                        return Err(Error::MalformedTable(format!(
                            "sum({}, {}) refers to unknown element {z}",
                            names[x], names[y]
                        )));
                    }
                }
            }
        }
        if let Some((x, &p)) = perp.iter().enumerate().find(|(_, &p)| p >= n) {
            return Err(Error::MalformedTable(format!(
                "perp({}) refers to unknown element {p}",
                names[x]
            )));
        }
        Ok(Self {
            names,
            zero,
            one,
            sum: sum.into_iter().flatten().collect(),
            perp,
        })
    }

    /// Builds the tables by evaluating `sum` and `perp` on every element.
    pub fn from_fn(
        names: Vec<String>,
        zero: Elem,
        one: Elem,
        sum: impl Fn(Elem, Elem) -> Option<Elem>,
        perp: impl Fn(Elem) -> Elem,
    ) -> Result<Self> {
        let n = names.len();
        let table = (0..n)
            .map(|x| (0..n).map(|y| sum(x, y)).collect())
            .collect();
        let perp = (0..n).map(perp).collect();
        Self::new(names, zero, one, table, perp)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    /// Always false: the universe of a constructed algebra is nonempty.
    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.names.len()
    }

    pub fn zero(&self) -> Elem {
        self.zero
    }

    pub fn one(&self) -> Elem {
        self.one
    }

    pub fn name(&self, x: Elem) -> &str {
        &self.names[x]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Looks an element up by display name.
    pub fn find(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|n| n == name)
    }

    /// The partial sum `x ⊕ y`, `None` when undefined.
    pub fn sum(&self, x: Elem, y: Elem) -> Option<Elem> {
        self.sum[x * self.len() + y]
    }

    pub fn perp(&self, x: Elem) -> Elem {
        self.perp[x]
    }

    pub fn orthogonal(&self, x: Elem, y: Elem) -> bool {
        self.sum(x, y).is_some()
    }

    /// `x ≤ y` iff `x ⊕ z = y` for some `z`.
    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        self.elements().any(|z| self.sum(x, z) == Some(y))
    }

    /// `x ⊖ y`: the `z` with `y ⊕ z = x`, defined iff `y ≤ x`.
    pub fn minus(&self, x: Elem, y: Elem) -> Option<Elem> {
        self.elements().find(|&z| self.sum(y, z) == Some(x))
    }

    /// `x ⊘ y = (x⊥ ⊕ y⊥)⊥`, the dual partial operation.
    pub fn owedge(&self, x: Elem, y: Elem) -> Option<Elem> {
        self.sum(self.perp(x), self.perp(y)).map(|s| self.perp(s))
    }

    /// Exhaustively checks the partial commutative monoid laws, then the
    /// orthocomplement laws, returning the first violation found.
    pub fn check_axioms(&self) -> AxiomReport {
        let els = self.elements();

        for x in els.clone() {
            if self.sum(x, self.zero) != Some(x) {
                return AxiomReport::fail(Law::ZeroUnit, [x]);
            }
        }
        for x in els.clone() {
            for y in els.clone() {
                if self.sum(x, y) != self.sum(y, x) {
                    return AxiomReport::fail(Law::Commutativity, [x, y]);
                }
            }
        }
        for x in els.clone() {
            for y in els.clone() {
                for z in els.clone() {
                    // x ⊥ y and (x ⊕ y) ⊥ z  ⇒  y ⊥ z, x ⊥ (y ⊕ z), equal results
                    let left = self.sum(x, y).and_then(|xy| self.sum(xy, z));
                    let right = self.sum(y, z).and_then(|yz| self.sum(x, yz));
                    if left != right {
                        return AxiomReport::fail(Law::Associativity, [x, y, z]);
                    }
                }
            }
        }

        if self.perp(self.zero) != self.one {
            return AxiomReport::fail(Law::ZeroComplement, [self.zero]);
        }
        for x in els.clone() {
            if self.sum(x, self.perp(x)) != Some(self.one) {
                return AxiomReport::fail(Law::Orthocomplement, [x]);
            }
        }
        for x in els.clone() {
            if self.perp(self.perp(x)) != x {
                return AxiomReport::fail(Law::Involution, [x]);
            }
        }
        for x in els.clone() {
            if self.orthogonal(x, self.one) && x != self.zero {
                return AxiomReport::fail(Law::ZeroLaw, [x]);
            }
        }
        for x in els.clone() {
            for y in els.clone() {
                if self.sum(x, y) == Some(self.one) && y != self.perp(x) {
                    return AxiomReport::fail(Law::ComplementUniqueness, [x, y]);
                }
            }
        }
        AxiomReport::Pass
    }

    /// Text dump: one line `x + y = z` per defined sum with `x ≤ y` by id.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for x in self.elements() {
            for y in x..self.len() {
                if let Some(z) = self.sum(x, y) {
                    out.push_str(&format!(
                        "{} + {} = {}\n",
                        self.name(x),
                        self.name(y),
                        self.name(z)
                    ));
                }
            }
        }
        out
    }
}

/// Laws checked by [`FiniteEffectAlgebra::check_axioms`], in checking order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Law {
    ZeroUnit,
    Commutativity,
    Associativity,
    ZeroComplement,
    Orthocomplement,
    Involution,
    ZeroLaw,
    ComplementUniqueness,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Law::ZeroUnit => "zero-unit (x + 0 = x)",
            Law::Commutativity => "commutativity",
            Law::Associativity => "associativity",
            Law::ZeroComplement => "zero-complement (0' = 1)",
            Law::Orthocomplement => "orthocomplement (x + x' = 1)",
            Law::ComplementUniqueness => "uniqueness of the orthocomplement",
            Law::Involution => "involution (x'' = x)",
            Law::ZeroLaw => "zero-law (x orthogonal to 1 implies x = 0)",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomReport {
    Pass,
    Fail { law: Law, witness: Vec<Elem> },
}

impl AxiomReport {
    fn fail<const N: usize>(law: Law, witness: [Elem; N]) -> Self {
        AxiomReport::Fail {
            law,
            witness: witness.to_vec(),
        }
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, AxiomReport::Pass)
    }

    /// Human readable form with witness names taken from `ea`.
    pub fn describe(&self, ea: &FiniteEffectAlgebra) -> String {
        match self {
            AxiomReport::Pass => "pass".to_string(),
            AxiomReport::Fail { law, witness } => {
                let names: Vec<&str> = witness.iter().map(|&x| ea.name(x)).collect();
                format!("fail: {law} at ({})", names.join(", "))
            }
        }
    }
}
