use graded_core::{
    parse_ring_config, ClassSpec, DimSpec, RingSpec, SummandBuilder, TriDeg,
};

use crate::ScenarioError;

/// Config text for the topological Hochschild ring presentation: a
/// truncated polynomial class u, an exterior class of degree 2p-1, a
/// polynomial class of degree 2p^2, and the two ladders of module
/// generators a_i, b_j with their multiplication table.
pub fn thh_ring_config(p: u64, mu_laurent: bool) -> String {
    let mu_kind = if mu_laurent { "laurent:1" } else { "poly" };
    format!(
        "\
ring thh v1
prime {p}
gen u trunc:p-1 t=2 w=1
gen lambda1 ext t=2*p-1 w=0
gen mu {mu_kind} t=2*p^2 w=0
gen a[i] for i=0..p-1 ext t=2*p*i+3 w=1
gen b[i] for i=1..p-1 poly t=2*p*i+2 w=1
alias b[0] = u
rule u^(p-2)*a[i] -> 0 if i<=p-2
rule u^(p-2)*b[j] -> 0
rule a[i]*a[j] -> 0
rule a[i]*b[j] -> u*a[i+j] if i+j<=p-1
rule a[i]*b[j] -> u*a[i+j-p]*mu if i+j>=p
rule b[i]*b[j] -> u*b[i+j] if i+j<=p-1
rule b[i]*b[j] -> u*b[i+j-p]*mu if i+j>=p
"
    )
}

pub fn thh_ring(p: u64) -> Result<RingSpec, ScenarioError> {
    if p < 3 {
        return Err(ScenarioError::PrimeTooSmall("thh".to_string(), 3));
    }
    Ok(parse_ring_config(&thh_ring_config(p, false))?)
}

/// The same presentation with the degree-2p^2 polynomial class
/// inverted.
pub fn thh_ring_mu_inverted(p: u64) -> Result<RingSpec, ScenarioError> {
    if p < 3 {
        return Err(ScenarioError::PrimeTooSmall("thh".to_string(), 3));
    }
    Ok(parse_ring_config(&thh_ring_config(p, true))?)
}

/// The module listing dual to the ring presentation: exterior (x)
/// polynomial outer factors tensored with the u-truncated module of
/// a/b generators. Must agree with the ring's Hilbert series.
pub fn thh_module_spec(p: u64) -> DimSpec {
    let pi = p as i64;
    let outer = |b: SummandBuilder| {
        b.exterior("lambda1", TriDeg::internal(2 * pi - 1), 0)
            .poly("mu", TriDeg::internal(2 * pi * pi), 0)
    };
    let mut mids = Vec::new();
    for i in 0..=(pi - 2) {
        mids.push(ClassSpec::new(
            &format!("a{i}"),
            TriDeg::internal(2 * pi * i + 3),
            1,
        ));
    }
    for j in 1..=(pi - 1) {
        mids.push(ClassSpec::new(
            &format!("b{j}"),
            TriDeg::internal(2 * pi * j + 2),
            1,
        ));
    }
    DimSpec::new(
        p,
        vec![
            outer(SummandBuilder::new())
                .trunc("u", TriDeg::internal(2), 1, p as u32 - 1)
                .build(),
            outer(SummandBuilder::new())
                .trunc("u", TriDeg::internal(2), 1, p as u32 - 2)
                .one_of(mids)
                .build(),
            outer(SummandBuilder::new())
                .trunc("u", TriDeg::internal(2), 1, p as u32 - 1)
                .one_of(vec![ClassSpec::new(
                    &format!("a{}", pi - 1),
                    TriDeg::internal(2 * pi * (pi - 1) + 3),
                    1,
                )])
                .build(),
        ],
    )
}

/// Weight-zero shape of the ring: E(lambda1, lambda2) (x) P(mu) with
/// |lambda2| = 2p^2 - 1.
pub fn thh_weight_zero_shape(p: u64) -> DimSpec {
    let pi = p as i64;
    DimSpec::new(
        p,
        vec![SummandBuilder::new()
            .exterior("lambda1", TriDeg::internal(2 * pi - 1), 0)
            .exterior("lambda2", TriDeg::internal(2 * pi * pi - 1), 0)
            .poly("mu", TriDeg::internal(2 * pi * pi), 0)
            .build()],
    )
}
