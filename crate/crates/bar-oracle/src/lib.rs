//! Brute-force Tor of an augmented graded algebra via the reduced bar
//! complex, used as an independent oracle for E^2-terms of bar spectral
//! sequences and for transpotence degree bookkeeping.

use std::collections::BTreeMap;

use fp_linalg::{subquotient_dim, FpMatrix};
use graded_core::{CoreError, Element, Monomial, RingSpec};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BarError {
    #[error("algebra is not connected: dim {0} in degree 0")]
    NotConnected(usize),
    #[error("bar complex budget exceeded: {0} chains")]
    BudgetExceeded(usize),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("d^2 != 0 in the bar complex at (s={s}, t={t})")]
    NotAComplex { s: usize, t: i64 },
}

/// A connected augmented algebra (all generators map to zero) with its
/// augmentation-ideal basis cached per degree.
pub struct AugmentedAlgebra {
    pub ring: RingSpec,
    ideal_basis: BTreeMap<i64, Vec<Monomial>>,
    pub max_degree: i64,
}

impl AugmentedAlgebra {
    pub fn new(ring: RingSpec, max_degree: i64) -> Result<Self, BarError> {
        let unit = ring.enumerate_basis(0, 0)?;
        if unit.len() != 1 {
            return Err(BarError::NotConnected(unit.len()));
        }
        let mut ideal_basis: BTreeMap<i64, Vec<Monomial>> = BTreeMap::new();
        for m in ring.enumerate_basis(1, max_degree)? {
            let d = m.degree(&ring.gens).total();
            ideal_basis.entry(d).or_default().push(m);
        }
        Ok(AugmentedAlgebra {
            ring,
            ideal_basis,
            max_degree,
        })
    }

    pub fn ideal_dim(&self, degree: i64) -> usize {
        self.ideal_basis.get(&degree).map_or(0, |v| v.len())
    }

    fn min_ideal_degree(&self) -> Option<i64> {
        self.ideal_basis.keys().next().copied()
    }
}

/// Bigraded dimensions, indexed by (bar filtration s, internal degree t).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BarBigrading {
    dims: BTreeMap<(usize, i64), usize>,
}

impl BarBigrading {
    pub fn dim(&self, s: usize, t: i64) -> usize {
        *self.dims.get(&(s, t)).unwrap_or(&0)
    }

    pub fn set(&mut self, s: usize, t: i64, dim: usize) {
        if dim > 0 {
            self.dims.insert((s, t), dim);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, i64), &usize)> {
        self.dims.iter()
    }

    /// Sum over filtrations in one total degree.
    pub fn total_dim(&self, n: i64) -> usize {
        self.dims
            .iter()
            .filter(|(&(s, t), _)| s as i64 + t == n)
            .map(|(_, &d)| d)
            .sum()
    }
}

/// An ordered basis element of one bar bidegree: a tuple of ideal basis
/// elements.
type Chain = Vec<Monomial>;

fn chains_for(a: &AugmentedAlgebra, s: usize, t_max: i64) -> Vec<Chain> {
    let mut out: Vec<(Chain, i64)> = vec![(Vec::new(), 0)];
    for _ in 0..s {
        let mut next = Vec::new();
        for (chain, deg) in &out {
            if t_max - deg < 1 {
                continue;
            }
            for (d, ms) in a.ideal_basis.range(1..=(t_max - deg)) {
                for m in ms {
                    let mut c = chain.clone();
                    c.push(m.clone());
                    next.push((c, deg + d));
                }
            }
        }
        out = next;
    }
    out.into_iter().map(|(c, _)| c).collect()
}

fn chain_degree(a: &AugmentedAlgebra, c: &Chain) -> i64 {
    c.iter().map(|m| m.degree(&a.ring.gens).total()).sum()
}

/// Bar differential of one chain: merge adjacent entries with the sign
/// (-1)^(i + |a_1| + ... + |a_i|) on the i-th face.
fn bar_d(a: &AugmentedAlgebra, chain: &Chain) -> Result<Vec<(Chain, i64)>, BarError> {
    let p = a.ring.p;
    let mut out = Vec::new();
    for i in 0..chain.len().saturating_sub(1) {
        let mut eps = (i + 1) as i64;
        for m in &chain[..=i] {
            eps += m.degree(&a.ring.gens).total();
        }
        let sign = if eps.rem_euclid(2) == 0 { 1 } else { -1 };
        let prod = a.ring.mul(
            &Element::from_monomial(chain[i].clone(), 1, p),
            &Element::from_monomial(chain[i + 1].clone(), 1, p),
        )?;
        for (m, c) in prod.iter() {
            if m.is_one() {
                continue;
            }
            let mut merged: Chain = chain[..i].to_vec();
            merged.push(m.clone());
            merged.extend_from_slice(&chain[i + 2..]);
            out.push((merged, sign * c as i64));
        }
    }
    Ok(out)
}

/// Homology dimensions of the reduced bar complex per (s, t) with
/// s <= s_max, t <= t_max.
pub fn bar_tor_dims(
    a: &AugmentedAlgebra,
    s_max: usize,
    t_max: i64,
) -> Result<BarBigrading, BarError> {
    bar_tor_dims_budget(a, s_max, t_max, 4_000_000)
}

pub fn bar_tor_dims_budget(
    a: &AugmentedAlgebra,
    s_max: usize,
    t_max: i64,
    budget: usize,
) -> Result<BarBigrading, BarError> {
    let p = a.ring.p;
    if a.min_ideal_degree().is_some() {
        // exact chain count by degree-capped convolution
        let cap = (t_max + 1).max(1) as usize;
        let mut dims = vec![0u64; cap];
        dims[0] = 1;
        let mut total = 1u64;
        for _ in 0..=s_max {
            let mut next = vec![0u64; cap];
            for (d, &v) in dims.iter().enumerate() {
                if v == 0 {
                    continue;
                }
                for e in 1..cap - d {
                    next[d + e] = next[d + e]
                        .saturating_add(v.saturating_mul(a.ideal_dim(e as i64) as u64));
                }
            }
            dims = next;
            total = total.saturating_add(dims.iter().sum::<u64>());
            if total > budget as u64 {
                return Err(BarError::BudgetExceeded(total as usize));
            }
        }
    }

    let mut by_bidegree: BTreeMap<(usize, i64), Vec<Chain>> = BTreeMap::new();
    let mut index: BTreeMap<(usize, i64), BTreeMap<Chain, usize>> = BTreeMap::new();
    let mut chain_count = 0usize;
    for s in 0..=(s_max + 1) {
        for chain in chains_for(a, s, t_max) {
            let t = chain_degree(a, &chain);
            let cell = (s, t);
            let idx = index.entry(cell).or_default();
            let v = by_bidegree.entry(cell).or_default();
            idx.insert(chain.clone(), v.len());
            v.push(chain);
            chain_count += 1;
            if chain_count > budget {
                return Err(BarError::BudgetExceeded(chain_count));
            }
        }
    }

    let empty: Vec<Chain> = Vec::new();
    let matrix_for = |s: usize, t: i64| -> Result<FpMatrix, BarError> {
        // differential d: (s, t) -> (s-1, t); rows = target basis
        let src = by_bidegree.get(&(s, t)).unwrap_or(&empty);
        let dst_index = index.get(&(s.wrapping_sub(1), t));
        let rows = dst_index.map_or(0, |m| m.len());
        let mut mat = FpMatrix::zero(rows, src.len(), p).expect("prime validated");
        for (j, chain) in src.iter().enumerate() {
            for (target, coeff) in bar_d(a, chain)? {
                let Some(di) = dst_index else { continue };
                let i = *di
                    .get(&target)
                    .expect("bar differential lands in enumerated basis");
                mat.add_to(i, j, coeff);
            }
        }
        Ok(mat)
    };

    let mut out = BarBigrading::default();
    out.set(0, 0, 1);
    for (&(s, t), chains) in &by_bidegree {
        if s == 0 || s > s_max {
            continue;
        }
        let survivors = matrix_for(s, t)?;
        let killers = matrix_for(s + 1, t)?;
        let dim = subquotient_dim(chains.len(), &killers, &survivors).map_err(|e| match e {
            fp_linalg::LinalgError::CompositionNonzero { .. } => BarError::NotAComplex { s, t },
            other => panic!("unexpected linalg error: {other}"),
        })?;
        out.set(s, t, dim);
    }
    Ok(out)
}

/// One dimension disagreement.
#[derive(Clone, Debug)]
pub struct DimMismatch {
    pub at: String,
    pub expected: usize,
    pub actual: usize,
}

#[derive(Clone, Debug, Default)]
pub struct OracleReport {
    pub mismatches: Vec<DimMismatch>,
    pub degrees_checked: i64,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Divided-power algebra model over F_p: Gamma(x) as the tensor product
/// of height-p truncated polynomial algebras on gamma_(p^k)(x),
/// instantiating only the factors whose generator degree fits the
/// cutoff. Exact in total degrees <= cutoff.
pub fn divided_power_ring(
    p: u64,
    label: &str,
    degree: i64,
    cutoff: i64,
) -> Result<RingSpec, CoreError> {
    use graded_core::{GenKind, GeneratorSpec, Gens, TriDeg};
    let mut gens = Vec::new();
    let mut step = degree;
    let mut k = 0;
    while step <= cutoff {
        gens.push(GeneratorSpec::new(
            &format!("{label}_g{k}"),
            GenKind::Truncated(p as u32),
            TriDeg::internal(step),
            0,
        ));
        k += 1;
        step *= p as i64;
    }
    RingSpec::new(p, Gens::new(gens)?, Vec::new())
}

fn cartan_expected_dims(p: u64, cutoff: i64) -> Result<BTreeMap<i64, usize>, CoreError> {
    use graded_core::{GenKind, GeneratorSpec, Gens, TriDeg};
    let mut gens = Vec::new();
    let mut pk = 1i64;
    let mut k = 0;
    loop {
        let e_deg = 2 * pk + 1;
        let f_deg = 2 * pk * p as i64 + 2;
        if e_deg > cutoff && f_deg > cutoff {
            break;
        }
        if e_deg <= cutoff {
            gens.push(GeneratorSpec::new(
                &format!("e{k}"),
                GenKind::Exterior,
                TriDeg::internal(e_deg),
                0,
            ));
        }
        let mut step = f_deg;
        let mut i = 0;
        while step <= cutoff {
            gens.push(GeneratorSpec::new(
                &format!("f{k}_g{i}"),
                GenKind::Truncated(p as u32),
                TriDeg::internal(step),
                0,
            ));
            i += 1;
            step *= p as i64;
        }
        pk *= p as i64;
        k += 1;
    }
    let ring = RingSpec::new(p, Gens::new(gens)?, Vec::new())?;
    ring.hilbert(0, cutoff, None)
}

/// Bar-oracle consistency for the double-suspension tower: Tor over
/// E(x_1) reproduces the divided-power algebra on a degree-2 class, and
/// Tor over that divided-power algebra matches the stated pattern of
/// exterior classes in degrees 2p^k + 1 and divided-power classes in
/// degrees 2p^(k+1) + 2.
pub fn cartan_check(p: u64, cutoff: i64) -> Result<OracleReport, BarError> {
    let mut report = OracleReport {
        degrees_checked: cutoff,
        ..Default::default()
    };

    {
        use graded_core::{GenKind, GeneratorSpec, Gens, TriDeg};
        let ring = RingSpec::new(
            p,
            Gens::new(vec![GeneratorSpec::new(
                "x1",
                GenKind::Exterior,
                TriDeg::internal(1),
                0,
            )])?,
            Vec::new(),
        )?;
        let alg = AugmentedAlgebra::new(ring, cutoff)?;
        let tor = bar_tor_dims(&alg, cutoff as usize + 1, cutoff)?;
        let gamma = divided_power_ring(p, "y", 2, cutoff)?;
        let expected = gamma.hilbert(0, cutoff, None)?;
        for n in 0..=cutoff {
            let actual = tor.total_dim(n);
            let expect = *expected.get(&n).unwrap_or(&0);
            if actual != expect {
                report.mismatches.push(DimMismatch {
                    at: format!("Tor over E(x_1), degree {n}"),
                    expected: expect,
                    actual,
                });
            }
        }
    }

    {
        let gamma = divided_power_ring(p, "y", 2, cutoff)?;
        let alg = AugmentedAlgebra::new(gamma, cutoff)?;
        let tor = bar_tor_dims(&alg, (cutoff / 2) as usize + 1, cutoff)?;
        let expected = cartan_expected_dims(p, cutoff)?;
        for n in 0..=cutoff {
            let actual = tor.total_dim(n);
            let expect = *expected.get(&n).unwrap_or(&0);
            if actual != expect {
                report.mismatches.push(DimMismatch {
                    at: format!("Tor over divided powers on y, degree {n}"),
                    expected: expect,
                    actual,
                });
            }
        }
    }
    Ok(report)
}
