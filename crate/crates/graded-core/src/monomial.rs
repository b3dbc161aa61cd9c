use std::cmp::Ordering;
use std::fmt;

use crate::gens::{GenId, Gens, TriDeg};

/// A monomial: sparse exponent vector over a generator table, kept
/// sorted by generator id (= generator name order).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: Vec<(GenId, i64)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { exps: Vec::new() }
    }

    pub fn gen(id: GenId) -> Self {
        Monomial { exps: vec![(id, 1)] }
    }

    pub fn from_exps(mut exps: Vec<(GenId, i64)>) -> Self {
        exps.sort_by_key(|&(g, _)| g);
        let mut merged: Vec<(GenId, i64)> = Vec::with_capacity(exps.len());
        for (g, e) in exps {
            match merged.last_mut() {
                Some((h, f)) if *h == g => *f += e,
                _ => merged.push((g, e)),
            }
        }
        merged.retain(|&(_, e)| e != 0);
        Monomial { exps: merged }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, id: GenId) -> i64 {
        self.exps
            .binary_search_by_key(&id, |&(g, _)| g)
            .map(|i| self.exps[i].1)
            .unwrap_or(0)
    }

    pub fn exps(&self) -> &[(GenId, i64)] {
        &self.exps
    }

    pub fn with_exponent(&self, id: GenId, e: i64) -> Monomial {
        let mut exps = self.exps.clone();
        match exps.binary_search_by_key(&id, |&(g, _)| g) {
            Ok(i) => {
                if e == 0 {
                    exps.remove(i);
                } else {
                    exps[i].1 = e;
                }
            }
            Err(i) => {
                if e != 0 {
                    exps.insert(i, (id, e));
                }
            }
        }
        Monomial { exps }
    }

    /// Exponent-wise sum (no Koszul sign; see `koszul_sign`).
    pub fn mul_raw(&self, other: &Monomial) -> Monomial {
        let mut exps = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() && j < other.exps.len() {
            match self.exps[i].0.cmp(&other.exps[j].0) {
                Ordering::Less => {
                    exps.push(self.exps[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    exps.push(other.exps[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let e = self.exps[i].1 + other.exps[j].1;
                    if e != 0 {
                        exps.push((self.exps[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        exps.extend_from_slice(&self.exps[i..]);
        exps.extend_from_slice(&other.exps[j..]);
        Monomial { exps }
    }

    /// Does `self` divide `other` exponent-wise? Negative exponents
    /// (Laurent) never block division downward.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().all(|&(g, e)| {
            let oe = other.exponent(g);
            if e >= 0 {
                oe >= e
            } else {
                oe <= e
            }
        })
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps.clone();
        for &(g, e) in &other.exps {
            match exps.binary_search_by_key(&g, |&(h, _)| h) {
                Ok(i) => {
                    exps[i].1 -= e;
                    if exps[i].1 == 0 {
                        exps.remove(i);
                    }
                }
                Err(i) => exps.insert(i, (g, -e)),
            }
        }
        Monomial { exps }
    }

    /// Componentwise max of nonnegative exponent vectors (overlap for
    /// critical pairs). Only meaningful for rule left-hand sides.
    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = self.clone();
        for &(g, e) in &other.exps {
            let cur = out.exponent(g);
            if e > cur {
                out = out.with_exponent(g, e);
            }
        }
        out
    }

    pub fn shares_gen(&self, other: &Monomial) -> bool {
        self.exps.iter().any(|&(g, e)| e != 0 && other.exponent(g) != 0)
    }

    pub fn degree(&self, gens: &Gens) -> TriDeg {
        let mut d = TriDeg::ZERO;
        for &(g, e) in &self.exps {
            d = d.add(&gens.get(g).degree_at(e));
        }
        d
    }

    pub fn weight(&self, gens: &Gens, p: u64) -> u32 {
        let mut w = 0i64;
        for &(g, e) in &self.exps {
            w += gens.get(g).weight_at(e, p) as i64;
        }
        w.rem_euclid(p as i64 - 1) as u32
    }

    /// Koszul sign (-1)^k incurred when merging the sorted word of
    /// `self` with the sorted word of `other` into one sorted word:
    /// each odd generator of `other` moves past every odd generator of
    /// `self` with a larger id.
    pub fn koszul_sign(&self, other: &Monomial, gens: &Gens) -> i8 {
        let odd = |m: &Monomial| -> Vec<GenId> {
            m.exps
                .iter()
                .filter(|&&(g, e)| e.rem_euclid(2) == 1 && gens.get(g).degree.is_odd())
                .map(|&(g, _)| g)
                .collect()
        };
        let a = odd(self);
        let b = odd(other);
        let mut swaps = 0usize;
        for &x in &a {
            for &y in &b {
                if x > y {
                    swaps += 1;
                }
            }
        }
        if swaps % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn display(&self, gens: &Gens) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let parts: Vec<String> = self
            .exps
            .iter()
            .map(|&(g, e)| {
                let name = &gens.get(g).name;
                if e == 1 {
                    name.clone()
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect();
        parts.join("*")
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on (generator id, exponent) pairs; absence of a
/// generator sorts before any positive power and after negative ones.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.exps.get(i), other.exps.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(&(g, e)), Some(&(h, f))) => {
                    if g != h {
                        // smaller gen id present vs absent (exp 0)
                        if g < h {
                            return e.cmp(&0);
                        } else {
                            return 0.cmp(&f);
                        }
                    }
                    if e != f {
                        return e.cmp(&f);
                    }
                    i += 1;
                    j += 1;
                }
                (Some(&(_, e)), None) => return e.cmp(&0),
                (None, Some(&(_, f))) => return 0.cmp(&f),
            }
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .exps
            .iter()
            .map(|&(g, e)| {
                if e == 1 {
                    format!("g{g}")
                } else {
                    format!("g{g}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}
