use std::collections::BTreeMap;

use crate::gens::{GenKind, TriDeg};
use crate::CoreError;

/// Constraint on the integer parameter of a basis family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Constraint {
    /// v_p(j) = c (so j != 0).
    VpEq(u32),
    /// v_p(j) >= c; j = 0 is allowed.
    VpGe(u32),
    /// a <= j <= b.
    InRange(i64, i64),
    /// j congruent to a mod m (m > 0).
    ModCong(i64, i64),
}

/// A parameterized family of basis classes, e.g. "lambda1 t^j" for all
/// j of a fixed p-adic valuation. Degrees are affine in j.
#[derive(Clone, Debug)]
pub struct FamilySpec {
    pub label: String,
    pub base_deg: TriDeg,
    pub base_weight: u32,
    /// Tri-degree contributed per unit of j.
    pub per_j: TriDeg,
    pub constraint: Constraint,
}

/// One fixed basis class.
#[derive(Clone, Debug)]
pub struct ClassSpec {
    pub label: String,
    pub deg: TriDeg,
    pub weight: u32,
}

impl ClassSpec {
    pub fn new(label: &str, deg: TriDeg, weight: u32) -> Self {
        ClassSpec {
            label: label.to_string(),
            deg,
            weight,
        }
    }
}

/// A tensor factor of a dimension summand.
#[derive(Clone, Debug)]
pub enum DimFactor {
    /// A generator with an exponent discipline: contributes `deg * e`.
    Kinded {
        label: String,
        deg: TriDeg,
        weight: u32,
        kind: GenKind,
    },
    /// Exactly one of the listed classes.
    OneOf(Vec<ClassSpec>),
    /// A parameterized family (at most one per summand).
    Family(FamilySpec),
}

#[derive(Clone, Debug, Default)]
pub struct DimSummand {
    pub factors: Vec<DimFactor>,
}

/// A direct sum of tensor products defining graded dimensions without
/// any ring structure.
#[derive(Clone, Debug)]
pub struct DimSpec {
    pub p: u64,
    pub summands: Vec<DimSummand>,
}

/// A fully resolved basis class of a `DimSpec` inside a window.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BasisClass {
    pub label: String,
    pub deg_s: i64,
    pub deg_t: i64,
    pub weight: u32,
}

impl BasisClass {
    pub fn total(&self) -> i64 {
        self.deg_s + self.deg_t
    }
}

/// Helpers for building summands fluently.
pub struct SummandBuilder {
    factors: Vec<DimFactor>,
}

impl SummandBuilder {
    pub fn new() -> Self {
        SummandBuilder {
            factors: Vec::new(),
        }
    }

    pub fn exterior(mut self, label: &str, deg: TriDeg, weight: u32) -> Self {
        self.factors.push(DimFactor::Kinded {
            label: label.to_string(),
            deg,
            weight,
            kind: GenKind::Exterior,
        });
        self
    }

    pub fn poly(mut self, label: &str, deg: TriDeg, weight: u32) -> Self {
        self.factors.push(DimFactor::Kinded {
            label: label.to_string(),
            deg,
            weight,
            kind: GenKind::Polynomial,
        });
        self
    }

    pub fn trunc(mut self, label: &str, deg: TriDeg, weight: u32, height: u32) -> Self {
        self.factors.push(DimFactor::Kinded {
            label: label.to_string(),
            deg,
            weight,
            kind: GenKind::Truncated(height),
        });
        self
    }

    pub fn laurent(mut self, label: &str, deg: TriDeg, weight: u32, step: u32) -> Self {
        self.factors.push(DimFactor::Kinded {
            label: label.to_string(),
            deg,
            weight,
            kind: GenKind::Laurent(step),
        });
        self
    }

    pub fn one_of(mut self, classes: Vec<ClassSpec>) -> Self {
        self.factors.push(DimFactor::OneOf(classes));
        self
    }

    pub fn family(mut self, f: FamilySpec) -> Self {
        self.factors.push(DimFactor::Family(f));
        self
    }

    pub fn build(self) -> DimSummand {
        DimSummand {
            factors: self.factors,
        }
    }
}

impl Default for SummandBuilder {
    fn default() -> Self {
        Self::new()
    }
}

/// Inclusive tri-degree window for enumeration.
#[derive(Clone, Copy, Debug)]
pub struct Window {
    pub s_min: i64,
    pub s_max: i64,
    pub t_min: i64,
    pub t_max: i64,
    pub n_min: i64,
    pub n_max: i64,
}

impl Window {
    pub fn new(s: (i64, i64), t: (i64, i64), n: (i64, i64)) -> Self {
        Window {
            s_min: s.0,
            s_max: s.1,
            t_min: t.0,
            t_max: t.1,
            n_min: n.0,
            n_max: n.1,
        }
    }

    /// Window specified by total degree only; filtration and internal
    /// degree are boxed generously so that `n = s + t` is the binding
    /// constraint for connective pages.
    pub fn total(n_min: i64, n_max: i64) -> Self {
        let span = (n_max - n_min).abs() + n_max.abs() + n_min.abs() + 4;
        Window {
            s_min: -2 * span,
            s_max: 2 * span,
            t_min: -2 * span,
            t_max: 2 * span,
            n_min,
            n_max,
        }
    }

    /// Total-degree range with an explicit filtration range; the
    /// internal-degree box is derived.
    pub fn total_with_s(n: (i64, i64), s: (i64, i64)) -> Self {
        Window {
            s_min: s.0,
            s_max: s.1,
            t_min: n.0 - s.1,
            t_max: n.1 - s.0,
            n_min: n.0,
            n_max: n.1,
        }
    }

    pub fn contains(&self, d: TriDeg) -> bool {
        d.s >= self.s_min
            && d.s <= self.s_max
            && d.t >= self.t_min
            && d.t <= self.t_max
            && d.total() >= self.n_min
            && d.total() <= self.n_max
    }

    /// Pad filtration by `r` and total degree by one on each side, as a
    /// page transition of length `r` requires.
    pub fn padded(&self, r: i64) -> Window {
        Window {
            s_min: self.s_min - r,
            s_max: self.s_max + r,
            t_min: self.t_min - 1 - r.max(0),
            t_max: self.t_max + 1 + r.max(0),
            n_min: self.n_min - 1,
            n_max: self.n_max + 1,
        }
    }
}

impl DimSpec {
    pub fn new(p: u64, summands: Vec<DimSummand>) -> Self {
        DimSpec { p, summands }
    }

    /// Enumerate all basis classes inside the window, sorted by label.
    pub fn enumerate(&self, window: &Window) -> Result<Vec<BasisClass>, CoreError> {
        let mut out = Vec::new();
        for summand in &self.summands {
            let fams = summand
                .factors
                .iter()
                .filter(|f| matches!(f, DimFactor::Family(_)))
                .count();
            if fams > 1 {
                return Err(CoreError::InfiniteFiber(
                    "summand with more than one family".to_string(),
                ));
            }
            let mut acc: Vec<(String, TriDeg, i64)> =
                vec![(String::new(), TriDeg::ZERO, 0i64)];
            for factor in &summand.factors {
                let mut next = Vec::new();
                for (label, deg, w) in &acc {
                    match factor {
                        DimFactor::Kinded {
                            label: gl,
                            deg: gd,
                            weight: gw,
                            kind,
                        } => {
                            let choices = exponent_choices(gd, kind, deg, window)?;
                            for e in choices {
                                let stride = kind.exponent_stride();
                                let nd = deg.add(&gd.scale(e * stride));
                                if !plausible(&nd, window) {
                                    continue;
                                }
                                let nl = extend_label(label, gl, e * stride);
                                next.push((nl, nd, w + *gw as i64 * e * stride));
                            }
                        }
                        DimFactor::OneOf(classes) => {
                            for c in classes {
                                let nd = deg.add(&c.deg);
                                if !plausible(&nd, window) {
                                    continue;
                                }
                                let nl = extend_label(label, &c.label, 1);
                                next.push((nl, nd, w + c.weight as i64));
                            }
                        }
                        DimFactor::Family(f) => {
                            for j in family_range(f, deg, window, self.p)? {
                                let nd = deg.add(&f.base_deg).add(&f.per_j.scale(j));
                                if !plausible(&nd, window) {
                                    continue;
                                }
                                let nl =
                                    extend_label(label, &f.label.replace("{j}", &j.to_string()), 1);
                                next.push((nl, nd, w + f.base_weight as i64));
                            }
                        }
                    }
                }
                acc = next;
            }
            for (label, deg, w) in acc {
                if window.contains(deg) {
                    out.push(BasisClass {
                        label: if label.is_empty() {
                            "1".to_string()
                        } else {
                            label
                        },
                        deg_s: deg.s,
                        deg_t: deg.t,
                        weight: w.rem_euclid(self.p as i64 - 1) as u32,
                    });
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// Dimension per total degree, optionally filtered by weight.
    pub fn hilbert(
        &self,
        lo: i64,
        hi: i64,
        weight: Option<u32>,
    ) -> Result<BTreeMap<i64, usize>, CoreError> {
        let window = Window::total(lo, hi);
        let mut out: BTreeMap<i64, usize> = (lo..=hi).map(|d| (d, 0)).collect();
        for c in self.enumerate(&window)? {
            if weight.is_none_or(|w| w == c.weight) {
                *out.get_mut(&c.total()).unwrap() += 1;
            }
        }
        Ok(out)
    }

    /// Dimension per (s, t, weight) cell.
    pub fn dims_by_cell(
        &self,
        window: &Window,
    ) -> Result<BTreeMap<(i64, i64, u32), usize>, CoreError> {
        let mut out = BTreeMap::new();
        for c in self.enumerate(window)? {
            *out.entry((c.deg_s, c.deg_t, c.weight)).or_insert(0) += 1;
        }
        Ok(out)
    }
}

fn extend_label(acc: &str, gen: &str, e: i64) -> String {
    if e == 0 {
        return acc.to_string();
    }
    let part = if e == 1 {
        gen.to_string()
    } else {
        format!("{gen}^{e}")
    };
    if acc.is_empty() {
        part
    } else {
        format!("{acc}*{part}")
    }
}

/// A partial product can still reach the window if each coordinate can
/// be corrected by later factors; without per-factor reachability data
/// we only prune on coordinates no later factor can decrease/increase.
/// Conservative: always true. Final filtering happens in `contains`.
fn plausible(_d: &TriDeg, _w: &Window) -> bool {
    true
}

/// Exponent values of a kinded factor that can land inside the window,
/// given the degree accumulated so far.
fn exponent_choices(
    gd: &TriDeg,
    kind: &GenKind,
    acc: &TriDeg,
    window: &Window,
) -> Result<Vec<i64>, CoreError> {
    let stride = kind.exponent_stride();
    let step = gd.scale(stride);
    let lo_default = 0i64;
    let (mut lo, mut hi) = match kind {
        GenKind::Exterior => (0, 1),
        GenKind::Truncated(h) => (0, *h as i64 - 1),
        GenKind::Polynomial => (lo_default, bound_from_window(step, acc, window, false)?),
        GenKind::Laurent(_) => {
            let hi = bound_from_window(step, acc, window, false)?;
            let lo = -bound_from_window(step.scale(-1), acc, window, false)?;
            (lo, hi)
        }
    };
    if matches!(kind, GenKind::Polynomial) {
        lo = 0;
        hi = hi.max(-1);
    }
    if hi < lo {
        return Ok(Vec::new());
    }
    Ok((lo..=hi).collect())
}

/// Largest multiple count of `step` that keeps some window coordinate
/// reachable. Requires a nonzero direction to bound against.
fn bound_from_window(
    step: TriDeg,
    acc: &TriDeg,
    window: &Window,
    _allow_neg: bool,
) -> Result<i64, CoreError> {
    // bound e such that acc + e*step can still satisfy each coordinate
    // constraint that step moves monotonically
    let mut best: Option<i64> = None;
    let candidates = [
        (step.s, acc.s, window.s_min, window.s_max),
        (step.t, acc.t, window.t_min, window.t_max),
        (step.total(), acc.total(), window.n_min, window.n_max),
    ];
    for (d, a, lo, hi) in candidates {
        if d > 0 {
            best = Some(best.map_or((hi - a).max(0) / d, |b: i64| b.min((hi - a).max(0) / d)));
        } else if d < 0 {
            best = Some(best.map_or((a - lo).max(0) / -d, |b: i64| b.min((a - lo).max(0) / -d)));
        }
    }
    best.ok_or_else(|| CoreError::InfiniteFiber("factor with zero tri-degree".to_string()))
}

/// Parameters j of a family that can land in the window.
fn family_range(
    f: &FamilySpec,
    acc: &TriDeg,
    window: &Window,
    p: u64,
) -> Result<Vec<i64>, CoreError> {
    if f.per_j == TriDeg::ZERO {
        return Err(CoreError::InfiniteFiber(format!(
            "family {} with zero step",
            f.label
        )));
    }
    let base = acc.add(&f.base_deg);
    let hi = bound_from_window(f.per_j, &base, window, true)?;
    let lo = -bound_from_window(f.per_j.scale(-1), &base, window, true)?;
    let mut out = Vec::new();
    for j in lo..=hi {
        let ok = match f.constraint {
            Constraint::VpEq(c) => j != 0 && vp(j, p) == c,
            Constraint::VpGe(c) => j == 0 || vp(j, p) >= c,
            Constraint::InRange(a, b) => j >= a && j <= b,
            Constraint::ModCong(a, m) => (j - a).rem_euclid(m) == 0,
        };
        if ok {
            out.push(j);
        }
    }
    Ok(out)
}

pub fn vp(mut j: i64, p: u64) -> u32 {
    assert!(j != 0 && p >= 2);
    let p = p as i64;
    let mut v = 0;
    while j % p == 0 {
        j /= p;
        v += 1;
    }
    v
}
