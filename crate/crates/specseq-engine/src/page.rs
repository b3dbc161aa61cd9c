use std::collections::BTreeMap;

use graded_core::{Element, GenId, Gens, Monomial, RingSpec, TriDeg, Window};

use crate::EngineError;

/// Exponent range `[lo, hi)`; `None` bounds are infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExpRange {
    pub lo: Option<i64>,
    pub hi: Option<i64>,
}

impl ExpRange {
    pub fn exactly(e: i64) -> Self {
        ExpRange {
            lo: Some(e),
            hi: Some(e + 1),
        }
    }

    pub fn upto(h: i64) -> Self {
        ExpRange {
            lo: Some(0),
            hi: Some(h),
        }
    }

    pub fn exterior() -> Self {
        Self::upto(2)
    }

    pub fn nonneg() -> Self {
        ExpRange {
            lo: Some(0),
            hi: None,
        }
    }

    pub fn all() -> Self {
        ExpRange { lo: None, hi: None }
    }

    pub fn from_lo(lo: i64) -> Self {
        ExpRange {
            lo: Some(lo),
            hi: None,
        }
    }

    pub fn bounded(lo: i64, hi: i64) -> Self {
        ExpRange {
            lo: Some(lo),
            hi: Some(hi),
        }
    }

    pub fn contains(&self, e: i64) -> bool {
        self.lo.is_none_or(|lo| e >= lo) && self.hi.is_none_or(|hi| e < hi)
    }

    /// Exceeds only the finite upper bound (the truncation direction).
    pub fn overflows(&self, e: i64) -> bool {
        self.lo.is_none_or(|lo| e >= lo) && self.hi.is_some_and(|hi| e >= hi)
    }
}

/// Condition on the twist `j = exp(t) - exp(mu)` of a monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwistCond {
    Any,
    Zero,
    /// j divisible by p^m (j = 0 allowed).
    DivByPw(u32),
    /// v_p(j) = v exactly (so j != 0).
    VpEq(u32),
}

impl TwistCond {
    pub fn holds(&self, j: i64, p: u64) -> bool {
        match self {
            TwistCond::Any => true,
            TwistCond::Zero => j == 0,
            TwistCond::DivByPw(m) => j.rem_euclid((p as i64).pow(*m)) == 0,
            TwistCond::VpEq(v) => j != 0 && graded_core::vp(j, p) == *v,
        }
    }
}

/// One monomial span of a page: exponent ranges per generator
/// (unmentioned generators are pinned to zero) plus a twist condition.
#[derive(Clone, Debug)]
pub struct Summand {
    pub ranges: BTreeMap<GenId, ExpRange>,
    pub twist: TwistCond,
}

impl Summand {
    pub fn new(ranges: Vec<(GenId, ExpRange)>, twist: TwistCond) -> Self {
        Summand {
            ranges: ranges.into_iter().collect(),
            twist,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    /// Member of the summand with this index.
    In(usize),
    /// Killed by a truncation bound of some summand.
    Zero,
    /// Not expressible on the page at all.
    Outside,
}

/// A claimed page of a spectral sequence: a label, the ambient
/// generator table of its tower, a span (direct sum of summands), and
/// an optional rewrite system used to normalize products (only needed
/// for pages whose span is the normal-form basis of a quotient ring).
#[derive(Clone, Debug)]
pub struct Page {
    pub label: String,
    pub p: u64,
    pub gens: Gens,
    pub summands: Vec<Summand>,
    pub normalizer: Option<RingSpec>,
    /// Generator whose exponent enters the twist positively.
    pub t_gen: Option<GenId>,
    /// Generator whose exponent enters the twist negatively.
    pub mu_gen: Option<GenId>,
}

impl Page {
    pub fn twist_of(&self, m: &Monomial) -> i64 {
        let t = self.t_gen.map_or(0, |g| m.exponent(g));
        let mu = self.mu_gen.map_or(0, |g| m.exponent(g));
        t - mu
    }

    /// Where does a monomial sit relative to the page span?
    pub fn membership(&self, m: &Monomial) -> Membership {
        let mut overflow = false;
        'summand: for (idx, sm) in self.summands.iter().enumerate() {
            if !sm.twist.holds(self.twist_of(m), self.p) {
                continue;
            }
            let mut this_overflows = false;
            for &(g, e) in m.exps() {
                match sm.ranges.get(&g) {
                    None => continue 'summand,
                    Some(r) if r.contains(e) => {}
                    Some(r) if r.overflows(e) => this_overflows = true,
                    Some(_) => continue 'summand,
                }
            }
            // generators pinned to zero by absence are fine (exponent 0
            // entries are never stored); ranges not containing 0 must be
            // realized by the monomial
            for (&g, r) in &sm.ranges {
                if m.exponent(g) == 0 && !r.contains(0) && !r.overflows(0) {
                    continue 'summand;
                }
            }
            if this_overflows {
                overflow = true;
                continue;
            }
            return Membership::In(idx);
        }
        if overflow {
            Membership::Zero
        } else {
            Membership::Outside
        }
    }

    pub fn degree_of(&self, m: &Monomial) -> TriDeg {
        m.degree(&self.gens)
    }

    pub fn weight_of(&self, m: &Monomial) -> u32 {
        m.weight(&self.gens, self.p)
    }

    /// Enumerate the basis per (s, t, weight) cell inside the window.
    pub fn cells(&self, window: &Window) -> Result<CellBasis, EngineError> {
        let mut cells: BTreeMap<(i64, i64, u32), Vec<Monomial>> = BTreeMap::new();
        for (idx, sm) in self.summands.iter().enumerate() {
            self.enumerate_summand(idx, sm, window, &mut |m| {
                let d = self.degree_of(&m);
                let w = self.weight_of(&m);
                cells.entry((d.s, d.t, w)).or_default().push(m);
            })?;
        }
        for v in cells.values_mut() {
            v.sort();
            v.dedup();
        }
        Ok(CellBasis { cells })
    }

    fn enumerate_summand(
        &self,
        summand_idx: usize,
        sm: &Summand,
        window: &Window,
        visit: &mut impl FnMut(Monomial),
    ) -> Result<(), EngineError> {
        // split generators into the (t, mu) pair and the rest
        let mut finite: Vec<(GenId, ExpRange)> = Vec::new();
        let mut t_range = None;
        let mut mu_range = None;
        for (&g, &r) in &sm.ranges {
            if Some(g) == self.t_gen {
                t_range = Some(r);
            } else if Some(g) == self.mu_gen {
                mu_range = Some(r);
            } else {
                if r.lo.is_none() || r.hi.is_none() {
                    return Err(EngineError::BadPage(format!(
                        "page {}: generator {} needs finite range",
                        self.label,
                        self.gens.get(g).name
                    )));
                }
                finite.push((g, r));
            }
        }
        // the t generator must move only filtration, mu only internal
        // degree, so that their exponent ranges decouple
        if let Some(t) = self.t_gen {
            if self.gens.get(t).degree.t != 0 {
                return Err(EngineError::BadPage(format!(
                    "page {}: twist generator must be internal-degree 0",
                    self.label
                )));
            }
        }
        if let Some(mu) = self.mu_gen {
            if self.gens.get(mu).degree.s != 0 {
                return Err(EngineError::BadPage(format!(
                    "page {}: mu generator must be filtration 0",
                    self.label
                )));
            }
        }

        let mut stack: Vec<(usize, Monomial)> = vec![(0, Monomial::one())];
        while let Some((i, partial)) = stack.pop() {
            if i < finite.len() {
                let (g, r) = finite[i];
                let (lo, hi) = (r.lo.unwrap(), r.hi.unwrap());
                for e in lo..hi {
                    stack.push((i + 1, partial.with_exponent(g, e)));
                }
                continue;
            }
            self.fill_t_mu(summand_idx, sm, &partial, t_range, mu_range, window, visit)?;
        }
        Ok(())
    }

    #[allow(clippy::too_many_arguments)]
    fn fill_t_mu(
        &self,
        _summand_idx: usize,
        sm: &Summand,
        partial: &Monomial,
        t_range: Option<ExpRange>,
        mu_range: Option<ExpRange>,
        window: &Window,
        visit: &mut impl FnMut(Monomial),
    ) -> Result<(), EngineError> {
        let d0 = self.degree_of(partial);
        let t_choices: Vec<i64> = match (t_range, self.t_gen) {
            (Some(r), Some(g)) => {
                let per = self.gens.get(g).degree.s; // negative for t
                if per == 0 {
                    return Err(EngineError::BadPage(format!(
                        "page {}: twist generator has zero filtration step",
                        self.label
                    )));
                }
                exponents_in(r, window.s_min - d0.s, window.s_max - d0.s, per)
            }
            _ => vec![0],
        };
        for a in t_choices {
            let with_t = match self.t_gen {
                Some(g) => partial.with_exponent(g, a),
                None => partial.clone(),
            };
            let d1 = self.degree_of(&with_t);
            let mu_choices: Vec<i64> = match (mu_range, self.mu_gen) {
                (Some(r), Some(g)) => {
                    let per = self.gens.get(g).degree.t;
                    if per == 0 {
                        return Err(EngineError::BadPage(format!(
                            "page {}: mu generator has zero internal step",
                            self.label
                        )));
                    }
                    exponents_in(r, window.t_min - d1.t, window.t_max - d1.t, per)
                }
                _ => vec![0],
            };
            for b in mu_choices {
                let m = match self.mu_gen {
                    Some(g) => with_t.with_exponent(g, b),
                    None => with_t.clone(),
                };
                if !sm.twist.holds(self.twist_of(&m), self.p) {
                    continue;
                }
                let d = self.degree_of(&m);
                if window.contains(d) {
                    visit(m);
                }
            }
        }
        Ok(())
    }
}

/// Exponents e in `range` with `e * per` inside `[lo, hi]`.
fn exponents_in(range: ExpRange, lo: i64, hi: i64, per: i64) -> Vec<i64> {
    let (wlo, whi) = if per > 0 {
        (div_ceil(lo, per), div_floor(hi, per))
    } else {
        (div_ceil(hi, per), div_floor(lo, per))
    };
    let lo = range.lo.map_or(wlo, |l| l.max(wlo));
    let hi_excl = range.hi.map_or(whi + 1, |h| h.min(whi + 1));
    if hi_excl <= lo {
        Vec::new()
    } else {
        (lo..hi_excl).collect()
    }
}

fn div_floor(a: i64, b: i64) -> i64 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

fn div_ceil(a: i64, b: i64) -> i64 {
    -div_floor(-a, b)
}

/// Enumerated page basis grouped by (s, t, weight).
#[derive(Clone, Debug, Default)]
pub struct CellBasis {
    pub cells: BTreeMap<(i64, i64, u32), Vec<Monomial>>,
}

impl CellBasis {
    pub fn dim(&self, cell: (i64, i64, u32)) -> usize {
        self.cells.get(&cell).map_or(0, |v| v.len())
    }

    pub fn total_dims(&self) -> BTreeMap<(i64, u32), usize> {
        let mut out = BTreeMap::new();
        for (&(s, t, w), v) in &self.cells {
            *out.entry((s + t, w)).or_insert(0) += v.len();
        }
        out
    }

    pub fn len(&self) -> usize {
        self.cells.values().map(|v| v.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.values().all(|v| v.is_empty())
    }

    pub fn index_of(&self, cell: (i64, i64, u32), m: &Monomial) -> Option<usize> {
        self.cells.get(&cell)?.binary_search(m).ok()
    }
}

/// Reduce a raw product against the page: apply the page normalizer if
/// present, then drop truncation-killed terms, and report any term that
/// leaves the span.
pub fn reduce_onto_page(page: &Page, e: &Element) -> Result<Element, EngineError> {
    let normalized = match &page.normalizer {
        Some(ring) => ring
            .normalize(e)
            .map_err(|err| EngineError::BadPage(format!("{}: {err}", page.label)))?,
        None => e.clone(),
    };
    let mut out = Element::zero();
    for (m, c) in normalized.iter() {
        match page.membership(m) {
            Membership::In(_) => out.add_term(m.clone(), c as i64, page.p),
            Membership::Zero => {}
            Membership::Outside => {
                return Err(EngineError::TargetOutsideBasis {
                    page: page.label.clone(),
                    witness: m.display(&page.gens),
                })
            }
        }
    }
    Ok(out)
}
