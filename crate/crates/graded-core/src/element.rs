use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use crate::gens::Gens;
use crate::monomial::Monomial;

/// A finite F_p-linear combination of monomials. Stored coefficients
/// are nonzero residues in `[1, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Element {
    terms: BTreeMap<Monomial, u64>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn from_monomial(m: Monomial, coeff: i64, p: u64) -> Self {
        let mut e = Element::zero();
        e.add_term(m, coeff, p);
        e
    }

    pub fn one(coeff: i64, p: u64) -> Self {
        Self::from_monomial(Monomial::one(), coeff, p)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, u64)> + '_ {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coefficient(&self, m: &Monomial) -> u64 {
        *self.terms.get(m).unwrap_or(&0)
    }

    pub fn add_term(&mut self, m: Monomial, coeff: i64, p: u64) {
        let c = coeff.rem_euclid(p as i64) as u64;
        if c == 0 {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut o) => {
                let v = (*o.get() + c) % p;
                if v == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add(&self, other: &Element, p: u64) -> Element {
        let mut out = self.clone();
        for (m, c) in other.iter() {
            out.add_term(m.clone(), c as i64, p);
        }
        out
    }

    pub fn scale(&self, coeff: i64, p: u64) -> Element {
        let c = coeff.rem_euclid(p as i64) as u64;
        let mut out = Element::zero();
        if c == 0 {
            return out;
        }
        for (m, v) in self.iter() {
            out.terms.insert(m.clone(), v * c % p);
        }
        out
    }

    pub fn sub(&self, other: &Element, p: u64) -> Element {
        self.add(&other.scale(-1, p), p)
    }

    pub fn display(&self, gens: &Gens) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .iter()
            .map(|(m, c)| {
                if c == 1 && !m.is_one() {
                    m.display(gens)
                } else if m.is_one() {
                    format!("{c}")
                } else {
                    format!("{c}*{}", m.display(gens))
                }
            })
            .collect();
        parts.join(" + ")
    }
}
