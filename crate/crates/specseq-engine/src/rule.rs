use graded_core::{Element, GenId, Gens, Monomial};

use crate::page::{reduce_onto_page, Page};
use crate::EngineError;

/// One generator-level assignment of a differential.
#[derive(Clone, Debug)]
pub enum Assign {
    /// d(gen) = target, extended as a derivation.
    OnGen { gen: GenId, target: Element },
    /// Derivation on the Laurent block of the page: a monomial with
    /// twist j picks up coefficient (dir * j / step) and is multiplied
    /// by `mult` (which already divides out one block generator).
    /// Applies only when step | j.
    TwistStep { step: i64, dir: i64, mult: Element },
    /// Family differential: a monomial with base_in-exponent >= 1 and
    /// twist of p-adic valuation `vp` maps to (m / base_in) * target,
    /// module-linearly over the rest of the page.
    OnFamily {
        base_in: GenId,
        vp: u32,
        target: Element,
    },
}

/// A page-length-r differential given by generator-level assignments.
/// Unassigned generators are cycles.
#[derive(Clone, Debug)]
pub struct DerivationRule {
    pub r: i64,
    pub assigns: Vec<Assign>,
}

impl DerivationRule {
    pub fn zero(r: i64) -> Self {
        DerivationRule {
            r,
            assigns: Vec::new(),
        }
    }
}

fn is_odd(gens: &Gens, g: GenId) -> bool {
    gens.get(g).degree.is_odd()
}

/// Sign and product for inserting `target` at the position of `at`
/// inside `rest`: (-1)^(odd content of rest left of `at`) times the
/// inversion count of moving target's odd generators into place.
fn insert_with_sign(gens: &Gens, rest: &Monomial, at: GenId, target: &Monomial) -> (i64, Monomial) {
    let rest_odd: Vec<GenId> = rest
        .exps()
        .iter()
        .filter(|&&(g, e)| e.rem_euclid(2) == 1 && is_odd(gens, g))
        .map(|&(g, _)| g)
        .collect();
    let target_odd: Vec<GenId> = target
        .exps()
        .iter()
        .filter(|&&(g, e)| e.rem_euclid(2) == 1 && is_odd(gens, g))
        .map(|&(g, _)| g)
        .collect();
    let mut swaps = 0usize;
    let mut prefix = 0usize;
    for &a in &rest_odd {
        if a < at {
            prefix += 1;
            // target gens with id < a must pass it when sorting
            swaps += target_odd.iter().filter(|&&t| t < a).count();
        } else {
            // target gens with id > b pass over b
            swaps += target_odd.iter().filter(|&&t| t > a).count();
        }
    }
    let sign = if (prefix + swaps) % 2 == 0 { 1 } else { -1 };
    (sign, rest.mul_raw(target))
}

/// Apply the differential to one page monomial, reducing the result
/// onto the page (normalizer + truncation kills; outside-span terms are
/// an error).
pub fn apply_rule(page: &Page, rule: &DerivationRule, m: &Monomial) -> Result<Element, EngineError> {
    let p = page.p;
    let mut raw = Element::zero();
    for assign in &rule.assigns {
        match assign {
            Assign::OnGen { gen, target } => {
                let e = m.exponent(*gen);
                if e == 0 {
                    continue;
                }
                let rest = m.div(&Monomial::gen(*gen));
                for (tm, tc) in target.iter() {
                    let (sign, merged) = insert_with_sign(&page.gens, &rest, *gen, tm);
                    raw.add_term(merged, sign * e.rem_euclid(p as i64) * tc as i64, p);
                }
            }
            Assign::TwistStep { step, dir, mult } => {
                let j = page.twist_of(m);
                if j.rem_euclid(*step) != 0 {
                    continue;
                }
                let coeff = (dir * (j / step)).rem_euclid(p as i64);
                if coeff == 0 {
                    continue;
                }
                let at = match (page.t_gen, page.mu_gen, *dir) {
                    (Some(t), _, 1) => t,
                    (_, Some(mu), _) => mu,
                    (Some(t), _, _) => t,
                    _ => {
                        return Err(EngineError::BadPage(format!(
                            "page {}: twist rule without twist generators",
                            page.label
                        )))
                    }
                };
                for (tm, tc) in mult.iter() {
                    let (sign, merged) = insert_with_sign(&page.gens, m, at, tm);
                    raw.add_term(merged, sign * coeff * tc as i64, p);
                }
            }
            Assign::OnFamily {
                base_in,
                vp,
                target,
            } => {
                if m.exponent(*base_in) < 1 {
                    continue;
                }
                let j = page.twist_of(m);
                if j == 0 || graded_core::vp(j, p) != *vp {
                    continue;
                }
                let rest = m.div(&Monomial::gen(*base_in));
                for (tm, tc) in target.iter() {
                    let (sign, merged) = insert_with_sign(&page.gens, &rest, *base_in, tm);
                    raw.add_term(merged, sign * tc as i64, p);
                }
            }
        }
    }
    reduce_onto_page(page, &raw)
}

/// Apply the rule to an element already expressed on the page.
pub fn apply_rule_elem(
    page: &Page,
    rule: &DerivationRule,
    e: &Element,
) -> Result<Element, EngineError> {
    let mut out = Element::zero();
    for (m, c) in e.iter() {
        let d = apply_rule(page, rule, m)?;
        out = out.add(&d.scale(c as i64, page.p), page.p);
    }
    Ok(out)
}
