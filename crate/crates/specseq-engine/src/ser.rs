//! Versioned JSON schema for page-transition schedules, so scenario
//! schedules can be exported, diffed and loaded back.

use serde::{Deserialize, Serialize};

use graded_core::{
    Element, GenKind, GeneratorSpec, Gens, Monomial, RewriteRule, RingSpec, TriDeg,
};

use crate::page::{ExpRange, Page, Summand, TwistCond};
use crate::rule::{Assign, DerivationRule};
use crate::turn::PageTransition;
use crate::EngineError;

pub const SCHEDULE_SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct GenDto {
    name: String,
    kind: String,
    s: i64,
    t: i64,
    w: u32,
}

#[derive(Serialize, Deserialize)]
struct TermDto {
    coeff: u64,
    monomial: Vec<(String, i64)>,
}

#[derive(Serialize, Deserialize)]
struct RangeDto {
    gen: String,
    lo: Option<i64>,
    hi: Option<i64>,
}

#[derive(Serialize, Deserialize)]
struct SummandDto {
    ranges: Vec<RangeDto>,
    twist: String,
}

#[derive(Serialize, Deserialize)]
struct RuleLineDto {
    lhs: Vec<(String, i64)>,
    rhs: Vec<TermDto>,
}

#[derive(Serialize, Deserialize)]
struct PageDto {
    label: String,
    summands: Vec<SummandDto>,
    rewrite_rules: Option<Vec<RuleLineDto>>,
    t_gen: Option<String>,
    mu_gen: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct AssignDto {
    kind: String,
    gen: Option<String>,
    step: Option<i64>,
    dir: Option<i64>,
    vp: Option<u32>,
    target: Vec<TermDto>,
}

#[derive(Serialize, Deserialize)]
struct TransitionDto {
    source: PageDto,
    r: i64,
    assigns: Vec<AssignDto>,
    target: PageDto,
}

#[derive(Serialize, Deserialize)]
struct ScheduleDto {
    schema_version: u32,
    prime: u64,
    generators: Vec<GenDto>,
    transitions: Vec<TransitionDto>,
}

fn kind_to_string(k: GenKind) -> String {
    match k {
        GenKind::Exterior => "ext".to_string(),
        GenKind::Polynomial => "poly".to_string(),
        GenKind::Truncated(h) => format!("trunc:{h}"),
        GenKind::Laurent(s) => format!("laurent:{s}"),
    }
}

fn kind_from_string(s: &str) -> Result<GenKind, EngineError> {
    if s == "ext" {
        return Ok(GenKind::Exterior);
    }
    if s == "poly" {
        return Ok(GenKind::Polynomial);
    }
    if let Some(h) = s.strip_prefix("trunc:") {
        return h
            .parse()
            .map(GenKind::Truncated)
            .map_err(|e| EngineError::Schedule(e.to_string()));
    }
    if let Some(k) = s.strip_prefix("laurent:") {
        return k
            .parse()
            .map(GenKind::Laurent)
            .map_err(|e| EngineError::Schedule(e.to_string()));
    }
    Err(EngineError::Schedule(format!("unknown kind `{s}`")))
}

fn monomial_dto(m: &Monomial, gens: &Gens) -> Vec<(String, i64)> {
    m.exps()
        .iter()
        .map(|&(g, e)| (gens.get(g).name.clone(), e))
        .collect()
}

fn monomial_from_dto(dto: &[(String, i64)], gens: &Gens) -> Result<Monomial, EngineError> {
    let mut exps = Vec::new();
    for (name, e) in dto {
        exps.push((gens.id(name)?, *e));
    }
    Ok(Monomial::from_exps(exps))
}

fn element_dto(e: &Element, gens: &Gens) -> Vec<TermDto> {
    e.iter()
        .map(|(m, c)| TermDto {
            coeff: c,
            monomial: monomial_dto(m, gens),
        })
        .collect()
}

fn element_from_dto(dto: &[TermDto], gens: &Gens, p: u64) -> Result<Element, EngineError> {
    let mut out = Element::zero();
    for t in dto {
        out.add_term(monomial_from_dto(&t.monomial, gens)?, t.coeff as i64, p);
    }
    Ok(out)
}

fn twist_to_string(t: TwistCond) -> String {
    match t {
        TwistCond::Any => "any".to_string(),
        TwistCond::Zero => "zero".to_string(),
        TwistCond::DivByPw(m) => format!("div:{m}"),
        TwistCond::VpEq(v) => format!("vp:{v}"),
    }
}

fn twist_from_string(s: &str) -> Result<TwistCond, EngineError> {
    if s == "any" {
        return Ok(TwistCond::Any);
    }
    if s == "zero" {
        return Ok(TwistCond::Zero);
    }
    if let Some(m) = s.strip_prefix("div:") {
        return m
            .parse()
            .map(TwistCond::DivByPw)
            .map_err(|e| EngineError::Schedule(e.to_string()));
    }
    if let Some(v) = s.strip_prefix("vp:") {
        return v
            .parse()
            .map(TwistCond::VpEq)
            .map_err(|e| EngineError::Schedule(e.to_string()));
    }
    Err(EngineError::Schedule(format!("unknown twist `{s}`")))
}

fn page_dto(page: &Page) -> PageDto {
    PageDto {
        label: page.label.clone(),
        summands: page
            .summands
            .iter()
            .map(|sm| SummandDto {
                ranges: sm
                    .ranges
                    .iter()
                    .map(|(&g, r)| RangeDto {
                        gen: page.gens.get(g).name.clone(),
                        lo: r.lo,
                        hi: r.hi,
                    })
                    .collect(),
                twist: twist_to_string(sm.twist),
            })
            .collect(),
        rewrite_rules: page.normalizer.as_ref().map(|ring| {
            ring.rules
                .iter()
                .map(|r| RuleLineDto {
                    lhs: monomial_dto(&r.lhs, &ring.gens),
                    rhs: element_dto(&r.rhs, &ring.gens),
                })
                .collect()
        }),
        t_gen: page.t_gen.map(|g| page.gens.get(g).name.clone()),
        mu_gen: page.mu_gen.map(|g| page.gens.get(g).name.clone()),
    }
}

fn page_from_dto(dto: &PageDto, gens: &Gens, p: u64) -> Result<Page, EngineError> {
    let mut summands = Vec::new();
    for sm in &dto.summands {
        let mut ranges = Vec::new();
        for r in &sm.ranges {
            ranges.push((gens.id(&r.gen)?, ExpRange { lo: r.lo, hi: r.hi }));
        }
        summands.push(Summand::new(ranges, twist_from_string(&sm.twist)?));
    }
    let normalizer = match &dto.rewrite_rules {
        None => None,
        Some(rules) => {
            let mut out = Vec::new();
            for r in rules {
                out.push(RewriteRule {
                    lhs: monomial_from_dto(&r.lhs, gens)?,
                    rhs: element_from_dto(&r.rhs, gens, p)?,
                });
            }
            Some(RingSpec::new(p, gens.clone(), out)?)
        }
    };
    Ok(Page {
        label: dto.label.clone(),
        p,
        gens: gens.clone(),
        summands,
        normalizer,
        t_gen: match &dto.t_gen {
            Some(n) => Some(gens.id(n)?),
            None => None,
        },
        mu_gen: match &dto.mu_gen {
            Some(n) => Some(gens.id(n)?),
            None => None,
        },
    })
}

fn assign_dto(a: &Assign, gens: &Gens) -> AssignDto {
    match a {
        Assign::OnGen { gen, target } => AssignDto {
            kind: "gen".to_string(),
            gen: Some(gens.get(*gen).name.clone()),
            step: None,
            dir: None,
            vp: None,
            target: element_dto(target, gens),
        },
        Assign::TwistStep { step, dir, mult } => AssignDto {
            kind: "twist-step".to_string(),
            gen: None,
            step: Some(*step),
            dir: Some(*dir),
            vp: None,
            target: element_dto(mult, gens),
        },
        Assign::OnFamily {
            base_in,
            vp,
            target,
        } => AssignDto {
            kind: "family".to_string(),
            gen: Some(gens.get(*base_in).name.clone()),
            step: None,
            dir: None,
            vp: Some(*vp),
            target: element_dto(target, gens),
        },
    }
}

fn assign_from_dto(dto: &AssignDto, gens: &Gens, p: u64) -> Result<Assign, EngineError> {
    let target = element_from_dto(&dto.target, gens, p)?;
    match dto.kind.as_str() {
        "gen" => Ok(Assign::OnGen {
            gen: gens.id(dto.gen.as_deref().unwrap_or_default())?,
            target,
        }),
        "twist-step" => Ok(Assign::TwistStep {
            step: dto
                .step
                .ok_or_else(|| EngineError::Schedule("missing step".into()))?,
            dir: dto.dir.unwrap_or(1),
            mult: target,
        }),
        "family" => Ok(Assign::OnFamily {
            base_in: gens.id(dto.gen.as_deref().unwrap_or_default())?,
            vp: dto
                .vp
                .ok_or_else(|| EngineError::Schedule("missing vp".into()))?,
            target,
        }),
        other => Err(EngineError::Schedule(format!("unknown assign `{other}`"))),
    }
}

/// Serialize a schedule (a list of page transitions over one generator
/// table) as versioned JSON.
pub fn schedule_to_json(transitions: &[PageTransition]) -> Result<String, EngineError> {
    let Some(first) = transitions.first() else {
        return Err(EngineError::Schedule("empty schedule".into()));
    };
    let gens = &first.source.gens;
    let dto = ScheduleDto {
        schema_version: SCHEDULE_SCHEMA_VERSION,
        prime: first.source.p,
        generators: gens
            .iter()
            .map(|(_, g)| GenDto {
                name: g.name.clone(),
                kind: kind_to_string(g.kind),
                s: g.degree.s,
                t: g.degree.t,
                w: g.weight,
            })
            .collect(),
        transitions: transitions
            .iter()
            .map(|tr| TransitionDto {
                source: page_dto(&tr.source),
                r: tr.rule.r,
                assigns: tr.rule.assigns.iter().map(|a| assign_dto(a, gens)).collect(),
                target: page_dto(&tr.target),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&dto).map_err(|e| EngineError::Schedule(e.to_string()))
}

pub fn schedule_from_json(json: &str) -> Result<Vec<PageTransition>, EngineError> {
    let dto: ScheduleDto =
        serde_json::from_str(json).map_err(|e| EngineError::Schedule(e.to_string()))?;
    if dto.schema_version != SCHEDULE_SCHEMA_VERSION {
        return Err(EngineError::Schedule(format!(
            "schema version {} unsupported (expected {})",
            dto.schema_version, SCHEDULE_SCHEMA_VERSION
        )));
    }
    let mut specs = Vec::new();
    for g in &dto.generators {
        specs.push(GeneratorSpec::new(
            &g.name,
            kind_from_string(&g.kind)?,
            TriDeg::new(g.s, g.t),
            g.w,
        ));
    }
    let gens = Gens::new(specs).map_err(EngineError::Core)?;
    let mut out = Vec::new();
    for tr in &dto.transitions {
        let mut assigns = Vec::new();
        for a in &tr.assigns {
            assigns.push(assign_from_dto(a, &gens, dto.prime)?);
        }
        out.push(PageTransition {
            source: page_from_dto(&tr.source, &gens, dto.prime)?,
            rule: DerivationRule { r: tr.r, assigns },
            target: page_from_dto(&tr.target, &gens, dto.prime)?,
        });
    }
    Ok(out)
}
