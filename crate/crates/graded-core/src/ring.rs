use std::collections::BTreeMap;

use crate::element::Element;
use crate::gens::{GenKind, Gens, TriDeg};
use crate::monomial::Monomial;
use crate::CoreError;

/// A monomial rewrite rule `lhs -> rhs`. The rule is applied anywhere
/// the left-hand side divides a monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub lhs: Monomial,
    pub rhs: Element,
}

/// A graded-commutative F_p-algebra presentation: generators with
/// exponent disciplines plus monomial rewrite rules defining normal
/// forms.
#[derive(Clone, Debug)]
pub struct RingSpec {
    pub p: u64,
    pub gens: Gens,
    pub rules: Vec<RewriteRule>,
    pub step_budget: usize,
}

#[derive(Clone, Debug, Default)]
pub struct ConfluenceViolation {
    pub overlap: String,
    pub left_normal_form: String,
    pub right_normal_form: String,
}

/// Outcome of `check_presentation_health`.
#[derive(Clone, Debug, Default)]
pub struct HealthReport {
    pub homogeneity_violations: Vec<String>,
    pub termination_failures: Vec<String>,
    pub confluence_violations: Vec<ConfluenceViolation>,
    pub associativity_violations: Vec<String>,
    pub monomials_checked: usize,
    pub critical_pairs_checked: usize,
    pub triples_checked: usize,
}

impl HealthReport {
    pub fn healthy(&self) -> bool {
        self.homogeneity_violations.is_empty()
            && self.termination_failures.is_empty()
            && self.confluence_violations.is_empty()
            && self.associativity_violations.is_empty()
    }

    pub fn summary(&self) -> String {
        if self.healthy() {
            format!(
                "healthy ({} monomials, {} critical pairs, {} triples)",
                self.monomials_checked, self.critical_pairs_checked, self.triples_checked
            )
        } else {
            format!(
                "{} homogeneity, {} termination, {} confluence, {} associativity violations",
                self.homogeneity_violations.len(),
                self.termination_failures.len(),
                self.confluence_violations.len(),
                self.associativity_violations.len()
            )
        }
    }
}

impl RingSpec {
    pub fn new(p: u64, gens: Gens, rules: Vec<RewriteRule>) -> Result<Self, CoreError> {
        if !fp_linalg::is_prime(p) || p < 3 {
            return Err(CoreError::BadPrime(p));
        }
        Ok(RingSpec {
            p,
            gens,
            rules,
            step_budget: 100_000,
        })
    }

    pub fn monomial(&self, parts: &[(&str, i64)]) -> Result<Monomial, CoreError> {
        let mut exps = Vec::new();
        for &(name, e) in parts {
            exps.push((self.gens.id(name)?, e));
        }
        Ok(Monomial::from_exps(exps))
    }

    pub fn element(&self, parts: &[(&str, i64)], coeff: i64) -> Result<Element, CoreError> {
        Ok(Element::from_monomial(self.monomial(parts)?, coeff, self.p))
    }

    /// Zero test from exponent disciplines alone: out-of-range truncated
    /// or exterior exponents kill the monomial, as does the square of a
    /// generator of odd total degree.
    fn kind_kills(&self, m: &Monomial) -> bool {
        m.exps().iter().any(|&(g, e)| {
            let spec = self.gens.get(g);
            (e < 0 && !spec.kind.allows_negative())
                || spec.kind.max_exponent().is_some_and(|max| e > max)
                || (e >= 2 && spec.degree.is_odd())
        })
    }

    fn first_applicable_rule(&self, m: &Monomial) -> Option<usize> {
        self.rules.iter().position(|r| r.lhs.divides(m))
    }

    /// Apply rule `idx` once at `m` (which the rule lhs must divide),
    /// with Koszul bookkeeping, returning the replacement element.
    fn apply_rule_once(&self, m: &Monomial, idx: usize) -> Element {
        let rule = &self.rules[idx];
        let q = m.div(&rule.lhs);
        let sign1 = q.koszul_sign(&rule.lhs, &self.gens) as i64;
        let mut out = Element::zero();
        for (rm, rc) in rule.rhs.iter() {
            let sign2 = q.koszul_sign(rm, &self.gens) as i64;
            out.add_term(q.mul_raw(rm), sign1 * sign2 * rc as i64, self.p);
        }
        out
    }

    /// Rewrite to normal form. Errors with `NonTerminating` when the
    /// step budget is exhausted.
    pub fn normalize(&self, e: &Element) -> Result<Element, CoreError> {
        let mut out = Element::zero();
        let mut work: Vec<(Monomial, i64)> =
            e.iter().map(|(m, c)| (m.clone(), c as i64)).collect();
        let mut steps = 0usize;
        while let Some((m, c)) = work.pop() {
            steps += 1;
            if steps > self.step_budget {
                return Err(CoreError::NonTerminating(m.display(&self.gens)));
            }
            if c.rem_euclid(self.p as i64) == 0 || self.kind_kills(&m) {
                continue;
            }
            match self.first_applicable_rule(&m) {
                None => out.add_term(m, c, self.p),
                Some(idx) => {
                    let replaced = self.apply_rule_once(&m, idx);
                    for (rm, rc) in replaced.iter() {
                        work.push((rm.clone(), c * rc as i64));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Tri-degree and weight of a homogeneous element, if homogeneous.
    pub fn degree_of(&self, e: &Element) -> Result<Option<(TriDeg, u32)>, CoreError> {
        let mut seen: Option<(TriDeg, u32)> = None;
        for (m, _) in e.iter() {
            let d = (m.degree(&self.gens), m.weight(&self.gens, self.p));
            match seen {
                None => seen = Some(d),
                Some(prev) if prev == d => {}
                Some(prev) => {
                    return Err(CoreError::Inhomogeneous(format!(
                        "element mixes ({},{},w{}) and ({},{},w{})",
                        prev.0.s, prev.0.t, prev.1, d.0.s, d.0.t, d.1
                    )))
                }
            }
        }
        Ok(seen)
    }

    /// Normalized graded-commutative product. Inputs must be
    /// homogeneous; tri-degree and weight additivity is asserted.
    pub fn mul(&self, x: &Element, y: &Element) -> Result<Element, CoreError> {
        let dx = self.degree_of(x)?;
        let dy = self.degree_of(y)?;
        let mut raw = Element::zero();
        for (mx, cx) in x.iter() {
            for (my, cy) in y.iter() {
                let sign = mx.koszul_sign(my, &self.gens) as i64;
                raw.add_term(mx.mul_raw(my), sign * (cx * cy % self.p) as i64, self.p);
            }
        }
        let out = self.normalize(&raw)?;
        if let (Some(a), Some(b), Some(c)) = (dx, dy, self.degree_of(&out)?) {
            let expect = (
                a.0.add(&b.0),
                ((a.1 + b.1) as i64).rem_euclid(self.p as i64 - 1) as u32,
            );
            if c != expect {
                return Err(CoreError::Inhomogeneous(format!(
                    "product degree ({},{},w{}) differs from sum ({},{},w{})",
                    c.0.s, c.0.t, c.1, expect.0.s, expect.0.t, expect.1
                )));
            }
        }
        Ok(out)
    }

    /// All normal-form monomials with total degree in `[lo, hi]`,
    /// sorted in the monomial order.
    pub fn enumerate_basis(&self, lo: i64, hi: i64) -> Result<Vec<Monomial>, CoreError> {
        let mut laurent = Vec::new();
        let mut bounded = Vec::new();
        for (id, g) in self.gens.iter() {
            if matches!(g.kind, GenKind::Laurent(_)) {
                laurent.push(id);
            } else {
                bounded.push(id);
            }
        }
        if laurent.len() > 1 {
            return Err(CoreError::InfiniteFiber(
                "more than one Laurent generator".to_string(),
            ));
        }
        for &id in &laurent {
            if self.gens.get(id).degree.total() == 0 {
                return Err(CoreError::InfiniteFiber(format!(
                    "Laurent generator {} has total degree 0",
                    self.gens.get(id).name
                )));
            }
        }
        let mut out = Vec::new();
        let mut partial = Monomial::one();
        let budget = 20_000_000usize;
        let mut nodes = 0usize;
        self.enum_rec(
            &bounded, 0, &laurent, lo, hi, &mut partial, &mut out, &mut nodes, budget,
        )?;
        out.sort();
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn enum_rec(
        &self,
        bounded: &[u32],
        i: usize,
        laurent: &[u32],
        lo: i64,
        hi: i64,
        partial: &mut Monomial,
        out: &mut Vec<Monomial>,
        nodes: &mut usize,
        budget: usize,
    ) -> Result<(), CoreError> {
        *nodes += 1;
        if *nodes > budget {
            return Err(CoreError::InfiniteFiber(
                "basis enumeration budget exhausted".to_string(),
            ));
        }
        // prune: extensions of a reducible monomial stay reducible
        if self.first_applicable_rule(partial).is_some() || self.kind_kills(partial) {
            return Ok(());
        }
        if i == bounded.len() {
            let d0 = partial.degree(&self.gens).total();
            match laurent {
                [] => {
                    if d0 >= lo && d0 <= hi {
                        out.push(partial.clone());
                    }
                }
                [g] => {
                    let spec = self.gens.get(*g);
                    let stride = spec.kind.exponent_stride() * spec.degree.total();
                    let (elo, ehi) = if stride > 0 {
                        (div_ceil(lo - d0, stride), div_floor(hi - d0, stride))
                    } else {
                        (div_ceil(hi - d0, stride), div_floor(lo - d0, stride))
                    };
                    for e in elo..=ehi {
                        let m = partial.with_exponent(*g, e);
                        if self.first_applicable_rule(&m).is_none() && !self.kind_kills(&m) {
                            out.push(m);
                        }
                    }
                }
                _ => unreachable!(),
            }
            return Ok(());
        }
        let g = bounded[i];
        let spec = self.gens.get(g);
        let dtot = spec.degree.total();
        let kind_max = spec.kind.max_exponent();
        let mut e = 0i64;
        loop {
            if let Some(max) = kind_max {
                if e > max {
                    break;
                }
            }
            let contrib = dtot * e;
            // all our positive-degree generators bound the search; a
            // degree-0 bounded generator is fine via its kind bound
            if dtot > 0 && partial.degree(&self.gens).total() + contrib > hi && laurent.is_empty()
            {
                break;
            }
            if dtot > 0 && kind_max.is_none() && contrib > 4 * (hi.abs() + lo.abs() + 64) {
                // unbounded polynomial generator ran away; only possible
                // when a Laurent generator could compensate
                return Err(CoreError::InfiniteFiber(format!(
                    "generator {} not bounded by rules",
                    spec.name
                )));
            }
            if dtot == 0 && kind_max.is_none() {
                return Err(CoreError::InfiniteFiber(format!(
                    "generator {} has degree 0 and no exponent bound",
                    spec.name
                )));
            }
            let old = partial.exponent(g);
            *partial = partial.with_exponent(g, e);
            self.enum_rec(bounded, i + 1, laurent, lo, hi, partial, out, nodes, budget)?;
            *partial = partial.with_exponent(g, old);
            e += 1;
        }
        Ok(())
    }

    /// Dimension per total degree over `[lo, hi]`, optionally filtered
    /// to a single weight residue.
    pub fn hilbert(
        &self,
        lo: i64,
        hi: i64,
        weight: Option<u32>,
    ) -> Result<BTreeMap<i64, usize>, CoreError> {
        let basis = self.enumerate_basis(lo, hi)?;
        let mut out: BTreeMap<i64, usize> = (lo..=hi).map(|d| (d, 0)).collect();
        for m in &basis {
            if let Some(w) = weight {
                if m.weight(&self.gens, self.p) != w {
                    continue;
                }
            }
            *out.get_mut(&m.degree(&self.gens).total()).unwrap() += 1;
        }
        Ok(out)
    }

    /// Termination, bounded local confluence, homogeneity and
    /// associativity checks. `cutoff` bounds the search degree for
    /// termination/confluence; `assoc_cutoff` bounds the total degree
    /// of basis triples tested for associativity (0 skips).
    pub fn check_presentation_health(&self, cutoff: i64, assoc_cutoff: i64) -> HealthReport {
        let mut report = HealthReport::default();

        for (i, rule) in self.rules.iter().enumerate() {
            let ld = rule.lhs.degree(&self.gens);
            let lw = rule.lhs.weight(&self.gens, self.p);
            for (m, _) in rule.rhs.iter() {
                let rd = m.degree(&self.gens);
                let rw = m.weight(&self.gens, self.p);
                if rd != ld || rw != lw {
                    report.homogeneity_violations.push(format!(
                        "rule {}: {} -> {} changes degree ({},{},w{}) to ({},{},w{})",
                        i,
                        rule.lhs.display(&self.gens),
                        m.display(&self.gens),
                        ld.s,
                        ld.t,
                        lw,
                        rd.s,
                        rd.t,
                        rw
                    ));
                }
            }
        }

        self.check_termination(cutoff, &mut report);
        self.check_confluence(cutoff, &mut report);
        if assoc_cutoff > 0 {
            self.check_associativity(assoc_cutoff, &mut report);
        }
        report
    }

    fn check_termination(&self, cutoff: i64, report: &mut HealthReport) {
        // bounded search: every exponent's degree contribution is capped
        // by the cutoff in absolute value
        let gens: Vec<u32> = self.gens.iter().map(|(i, _)| i).collect();
        let ranges: Vec<(i64, i64)> = gens
            .iter()
            .map(|&g| {
                let spec = self.gens.get(g);
                let d = spec.degree.total().abs().max(1) * spec.kind.exponent_stride().max(1);
                let cap = (cutoff / d).max(0) + 1;
                let lo = if spec.kind.allows_negative() { -cap } else { 0 };
                let hi = match spec.kind.max_exponent() {
                    Some(m) => m.min(cap),
                    None => cap,
                };
                (lo, hi)
            })
            .collect();
        self.enumerate_box(&gens, &ranges, 0, &mut Monomial::one(), &mut |m| {
            if m.degree(&self.gens).total() > cutoff {
                return;
            }
            report.monomials_checked += 1;
            if self
                .normalize(&Element::from_monomial(m.clone(), 1, self.p))
                .is_err()
            {
                report
                    .termination_failures
                    .push(m.display(&self.gens));
            }
        });
    }

    fn enumerate_box(
        &self,
        gens: &[u32],
        ranges: &[(i64, i64)],
        i: usize,
        partial: &mut Monomial,
        visit: &mut impl FnMut(&Monomial),
    ) {
        if i == gens.len() {
            visit(partial);
            return;
        }
        let (lo, hi) = ranges[i];
        for e in lo..=hi {
            let old = partial.exponent(gens[i]);
            *partial = partial.with_exponent(gens[i], e);
            // degree prune only when all remaining contributions are nonnegative
            self.enumerate_box(gens, ranges, i + 1, partial, visit);
            *partial = partial.with_exponent(gens[i], old);
        }
    }

    fn check_confluence(&self, cutoff: i64, report: &mut HealthReport) {
        for i in 0..self.rules.len() {
            for j in i..self.rules.len() {
                let overlap = self.rules[i].lhs.lcm(&self.rules[j].lhs);
                if i != j && !self.rules[i].lhs.shares_gen(&self.rules[j].lhs) {
                    continue;
                }
                if overlap.degree(&self.gens).total() > cutoff {
                    continue;
                }
                report.critical_pairs_checked += 1;
                let left = self.apply_rule_once(&overlap, i);
                let right = self.apply_rule_once(&overlap, j);
                match (self.normalize(&left), self.normalize(&right)) {
                    (Ok(a), Ok(b)) => {
                        if a != b {
                            report.confluence_violations.push(ConfluenceViolation {
                                overlap: overlap.display(&self.gens),
                                left_normal_form: a.display(&self.gens),
                                right_normal_form: b.display(&self.gens),
                            });
                        }
                    }
                    _ => report.confluence_violations.push(ConfluenceViolation {
                        overlap: overlap.display(&self.gens),
                        left_normal_form: "<non-terminating>".to_string(),
                        right_normal_form: "<non-terminating>".to_string(),
                    }),
                }
            }
        }
    }

    fn check_associativity(&self, cutoff: i64, report: &mut HealthReport) {
        let Ok(basis) = self.enumerate_basis(0, cutoff) else {
            report
                .associativity_violations
                .push("basis enumeration failed".to_string());
            return;
        };
        let degs: Vec<i64> = basis
            .iter()
            .map(|m| m.degree(&self.gens).total())
            .collect();
        let elems: Vec<Element> = basis
            .iter()
            .map(|m| Element::from_monomial(m.clone(), 1, self.p))
            .collect();
        let mut pair_cache: BTreeMap<(usize, usize), Element> = BTreeMap::new();
        let pair = |a: usize, b: usize, cache: &mut BTreeMap<(usize, usize), Element>| {
            let key = (a.min(b), a.max(b));
            if !cache.contains_key(&key) {
                let r = self.mul(&elems[key.0], &elems[key.1]).unwrap_or_default();
                cache.insert(key, r);
            }
            cache[&key].clone()
        };
        for i in 0..basis.len() {
            for j in i..basis.len() {
                if degs[i] + degs[j] > cutoff {
                    continue;
                }
                for k in j..basis.len() {
                    if degs[i] + degs[j] + degs[k] > cutoff {
                        continue;
                    }
                    report.triples_checked += 1;
                    let ij = pair(i, j, &mut pair_cache);
                    let jk = pair(j, k, &mut pair_cache);
                    let left = self.mul(&ij, &elems[k]).unwrap_or_default();
                    let right = self.mul(&elems[i], &jk).unwrap_or_default();
                    if left != right {
                        report.associativity_violations.push(format!(
                            "({} * {}) * {} != {} * ({} * {})",
                            basis[i].display(&self.gens),
                            basis[j].display(&self.gens),
                            basis[k].display(&self.gens),
                            basis[i].display(&self.gens),
                            basis[j].display(&self.gens),
                            basis[k].display(&self.gens),
                        ));
                    }
                }
            }
        }
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
