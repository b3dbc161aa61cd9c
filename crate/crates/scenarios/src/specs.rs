//! Dimension presentations of the abutments: the cyclic-homology and
//! K-theory module statements, their weight-zero shapes, and the
//! low-degree tables that seed the assemblies.

use std::collections::BTreeMap;

use graded_core::{ClassSpec, DimSpec, SummandBuilder, TriDeg, Window};

fn d(t: i64) -> TriDeg {
    TriDeg::internal(t)
}

/// Degrees of the named low-dimensional classes at a given prime.
pub struct Degrees {
    pub p: i64,
}

impl Degrees {
    pub fn new(p: u64) -> Self {
        Degrees { p: p as i64 }
    }
    pub fn lambda1(&self) -> i64 {
        2 * self.p - 1
    }
    pub fn lambda2(&self) -> i64 {
        2 * self.p * self.p - 1
    }
    pub fn a1(&self) -> i64 {
        2 * self.p + 3
    }
    pub fn b(&self) -> i64 {
        2 * self.p + 2
    }
    pub fn v2(&self) -> i64 {
        2 * self.p * self.p - 2
    }
}

/// The cyclic-homology module statement: a free module over the
/// polynomial algebra on the degree-(2p+2) class b, on 8 + 4(p-1)
/// generators.
pub fn tc_theorem_spec(p: u64) -> DimSpec {
    let g = Degrees::new(p);
    let pi = p as i64;
    let b = |s: SummandBuilder| s.poly("b", d(g.b()), 1);
    let mut summands = Vec::new();
    // P(b) (x) E(bd, lambda1, a1)
    summands.push(
        b(SummandBuilder::new())
            .exterior("bd", d(-1), 0)
            .exterior("lambda1", d(g.lambda1()), 0)
            .exterior("a1", d(g.a1()), 1)
            .build(),
    );
    // P(b) (x) E(a1) (x) {t^d lambda1}
    let tdl: Vec<ClassSpec> = (1..pi)
        .map(|dd| ClassSpec::new(&format!("t^{dd}*lambda1"), d(g.lambda1() - 2 * dd), 0))
        .collect();
    summands.push(
        b(SummandBuilder::new())
            .exterior("a1", d(g.a1()), 1)
            .one_of(tdl)
            .build(),
    );
    // P(b) (x) E(lambda1) (x) {u^i a0 (0 <= i < p-2), t^(p^2-p) lambda2}
    let mut mids: Vec<ClassSpec> = (0..pi - 2)
        .map(|i| ClassSpec::new(&format!("u^{i}*a0"), d(2 * i + 3), (i as u32 + 1) % (p as u32 - 1)))
        .collect();
    mids.push(ClassSpec::new(
        "t^(p^2-p)*lambda2",
        d(g.lambda2() - 2 * (pi * pi - pi)),
        0,
    ));
    summands.push(
        b(SummandBuilder::new())
            .exterior("lambda1", d(g.lambda1()), 0)
            .one_of(mids)
            .build(),
    );
    DimSpec::new(p, summands)
}

/// The K-theory module statement at the completed ring.
pub fn k_theorem_spec(p: u64) -> DimSpec {
    let g = Degrees::new(p);
    let pi = p as i64;
    let b = |s: SummandBuilder| s.poly("b", d(g.b()), 1);
    let mut summands = Vec::new();
    summands.push(
        b(SummandBuilder::new())
            .exterior("lambda1", d(g.lambda1()), 0)
            .exterior("a1", d(g.a1()), 1)
            .build(),
    );
    summands.push(
        b(SummandBuilder::new())
            .one_of(vec![
                ClassSpec::new("bd*lambda1", d(g.lambda1() - 1), 0),
                ClassSpec::new("bd*b", d(g.b() - 1), 1),
                ClassSpec::new("bd*a1", d(g.a1() - 1), 1),
                ClassSpec::new("bd*lambda1*a1", d(g.lambda1() + g.a1() - 1), 1),
            ])
            .build(),
    );
    let tdl: Vec<ClassSpec> = (1..pi)
        .map(|dd| ClassSpec::new(&format!("t^{dd}*lambda1"), d(g.lambda1() - 2 * dd), 0))
        .collect();
    summands.push(
        b(SummandBuilder::new())
            .exterior("a1", d(g.a1()), 1)
            .one_of(tdl)
            .build(),
    );
    let mut sig: Vec<ClassSpec> = (1..=pi - 2)
        .map(|n| ClassSpec::new(&format!("sigma{n}"), d(2 * n + 3 - 2), n as u32 % (p as u32 - 1)))
        .collect();
    sig.push(ClassSpec::new(
        "lambda2*t^(p^2-p)",
        d(g.lambda2() - 2 * (pi * pi - pi)),
        0,
    ));
    summands.push(
        b(SummandBuilder::new())
            .exterior("lambda1", d(g.lambda1()), 0)
            .one_of(sig)
            .build(),
    );
    summands.push(
        SummandBuilder::new()
            .one_of(vec![ClassSpec::new("s", d(2 * pi - 3), 0)])
            .build(),
    );
    DimSpec::new(p, summands)
}

/// The conditional statement for the periodic ring: a1-type generators
/// replaced by the degree-one unit class d, the sporadic class dropped.
pub fn kup_theorem_spec(p: u64) -> DimSpec {
    let g = Degrees::new(p);
    let pi = p as i64;
    let b = |s: SummandBuilder| s.poly("b", d(g.b()), 1);
    let mut summands = Vec::new();
    summands.push(
        b(SummandBuilder::new())
            .exterior("lambda1", d(g.lambda1()), 0)
            .exterior("d", d(1), 0)
            .build(),
    );
    summands.push(
        b(SummandBuilder::new())
            .one_of(vec![
                ClassSpec::new("bd*lambda1", d(g.lambda1() - 1), 0),
                ClassSpec::new("bd*b", d(g.b() - 1), 1),
                ClassSpec::new("bd*a1", d(g.a1() - 1), 1),
                ClassSpec::new("bd*lambda1*d", d(g.lambda1()), 0),
            ])
            .build(),
    );
    let tdl: Vec<ClassSpec> = (1..pi)
        .map(|dd| ClassSpec::new(&format!("t^{dd}*lambda1"), d(g.lambda1() - 2 * dd), 0))
        .collect();
    summands.push(
        b(SummandBuilder::new())
            .exterior("d", d(1), 0)
            .one_of(tdl)
            .build(),
    );
    let mut sig: Vec<ClassSpec> = (1..=pi - 2)
        .map(|n| ClassSpec::new(&format!("sigma{n}"), d(2 * n + 1), n as u32 % (p as u32 - 1)))
        .collect();
    sig.push(ClassSpec::new(
        "lambda2*t^(p^2-p)",
        d(g.lambda2() - 2 * (pi * pi - pi)),
        0,
    ));
    summands.push(
        b(SummandBuilder::new())
            .exterior("lambda1", d(g.lambda1()), 0)
            .one_of(sig)
            .build(),
    );
    DimSpec::new(p, summands)
}

/// K-theory of the p-adic integers.
pub fn kzp_spec(p: u64) -> DimSpec {
    let g = Degrees::new(p);
    let pi = p as i64;
    let mut summands = Vec::new();
    summands.push(
        SummandBuilder::new()
            .exterior("lambda1", d(g.lambda1()), 0)
            .build(),
    );
    summands.push(
        SummandBuilder::new()
            .one_of(vec![
                ClassSpec::new("bd*v1", d(2 * pi - 3), 0),
                ClassSpec::new("bd*lambda1", d(2 * pi - 2), 0),
            ])
            .build(),
    );
    summands.push(
        SummandBuilder::new()
            .one_of(
                (1..pi)
                    .map(|dd| {
                        ClassSpec::new(&format!("lambda1*t^{dd}"), d(g.lambda1() - 2 * dd), 0)
                    })
                    .collect(),
            )
            .build(),
    );
    DimSpec::new(p, summands)
}

/// Weight-zero shape of the cyclic-homology statement: the Adams-summand
/// form over P(v2).
pub fn tc_weight_zero_shape(p: u64) -> DimSpec {
    let g = Degrees::new(p);
    let pi = p as i64;
    let v2 = |s: SummandBuilder| s.poly("v2", d(g.v2()), 0);
    let mut summands = Vec::new();
    summands.push(
        v2(SummandBuilder::new())
            .exterior("bd", d(-1), 0)
            .exterior("lambda1", d(g.lambda1()), 0)
            .exterior("lambda2", d(g.lambda2()), 0)
            .build(),
    );
    summands.push(
        v2(SummandBuilder::new())
            .exterior("lambda2", d(g.lambda2()), 0)
            .one_of(
                (1..pi)
                    .map(|dd| {
                        ClassSpec::new(&format!("lambda1*t^{dd}"), d(g.lambda1() - 2 * dd), 0)
                    })
                    .collect(),
            )
            .build(),
    );
    summands.push(
        v2(SummandBuilder::new())
            .exterior("lambda1", d(g.lambda1()), 0)
            .one_of(
                (1..pi)
                    .map(|dd| {
                        ClassSpec::new(&format!("lambda2*t^{}", dd * pi), d(g.lambda2() - 2 * dd * pi), 0)
                    })
                    .collect(),
            )
            .build(),
    );
    DimSpec::new(p, summands)
}

/// Weight-zero shape of the K-theory statement: the Adams-summand form.
pub fn k_weight_zero_shape(p: u64) -> DimSpec {
    let g = Degrees::new(p);
    let pi = p as i64;
    let v2 = |s: SummandBuilder| s.poly("v2", d(g.v2()), 0);
    let mut summands = Vec::new();
    summands.push(
        v2(SummandBuilder::new())
            .exterior("lambda1", d(g.lambda1()), 0)
            .exterior("lambda2", d(g.lambda2()), 0)
            .build(),
    );
    summands.push(
        v2(SummandBuilder::new())
            .one_of(vec![
                ClassSpec::new("bd*lambda1", d(2 * pi - 2), 0),
                ClassSpec::new("bd*v2", d(g.v2() - 1), 0),
                ClassSpec::new("bd*lambda2", d(g.lambda2() - 1), 0),
                ClassSpec::new(
                    "bd*lambda1*lambda2",
                    d(g.lambda1() + g.lambda2() - 1),
                    0,
                ),
            ])
            .build(),
    );
    summands.push(
        v2(SummandBuilder::new())
            .exterior("lambda2", d(g.lambda2()), 0)
            .one_of(
                (1..pi)
                    .map(|dd| {
                        ClassSpec::new(&format!("lambda1*t^{dd}"), d(g.lambda1() - 2 * dd), 0)
                    })
                    .collect(),
            )
            .build(),
    );
    summands.push(
        v2(SummandBuilder::new())
            .exterior("lambda1", d(g.lambda1()), 0)
            .one_of(
                (1..pi)
                    .map(|dd| {
                        ClassSpec::new(&format!("lambda2*t^{}", dd * pi), d(g.lambda2() - 2 * dd * pi), 0)
                    })
                    .collect(),
            )
            .build(),
    );
    summands.push(
        SummandBuilder::new()
            .one_of(vec![ClassSpec::new("a", d(2 * pi - 3), 0)])
            .build(),
    );
    DimSpec::new(p, summands)
}

/// The finite kernel of the base-change comparison map: one b-multiple
/// ladder over the sporadic class.
pub fn comparison_kernel_spec(p: u64) -> DimSpec {
    let g = Degrees::new(p);
    let pi = p as i64;
    DimSpec::new(
        p,
        vec![SummandBuilder::new()
            .one_of(
                (1..=pi - 2)
                    .map(|k| {
                        ClassSpec::new(
                            &format!("b^{k}*a"),
                            d(2 * pi - 3 + k * g.b()),
                            (k % (pi - 1)) as u32,
                        )
                    })
                    .collect(),
            )
            .build()],
    )
}

/// The finite cokernel of the base-change comparison map.
pub fn comparison_cokernel_spec(p: u64) -> DimSpec {
    let g = Degrees::new(p);
    let pi = p as i64;
    let btrunc = |s: SummandBuilder| s.trunc("b", d(g.b()), 1, p as u32 - 2);
    let mut summands = Vec::new();
    summands.push(
        btrunc(SummandBuilder::new())
            .one_of(vec![
                ClassSpec::new("bd*b", d(g.b() - 1), 1),
                ClassSpec::new("bd*a1", d(g.a1() - 1), 1),
                ClassSpec::new("a1", d(g.a1()), 1),
                ClassSpec::new("bd*lambda1*a1", d(g.lambda1() + g.a1() - 1), 1),
                ClassSpec::new("lambda1*a1", d(g.lambda1() + g.a1()), 1),
            ])
            .build(),
    );
    summands.push(
        btrunc(SummandBuilder::new())
            .one_of(
                (1..pi)
                    .map(|dd| {
                        ClassSpec::new(
                            &format!("a1*lambda1*t^{dd}"),
                            d(g.a1() + g.lambda1() - 2 * dd),
                            1,
                        )
                    })
                    .collect(),
            )
            .build(),
    );
    summands.push(
        SummandBuilder::new()
            .exterior("lambda1", d(g.lambda1()), 0)
            .one_of(
                (1..=pi - 2)
                    .flat_map(|n| {
                        (0..=pi - 2 - n).map(move |i| (n, i)).collect::<Vec<_>>()
                    })
                    .map(|(n, i)| {
                        ClassSpec::new(
                            &format!("sigma{n}*b^{i}"),
                            d(2 * n + 1 + i * (2 * pi + 2)),
                            ((n + i) % (pi - 1)) as u32,
                        )
                    })
                    .collect(),
            )
            .build(),
    );
    DimSpec::new(p, summands)
}

/// Low-degree table (degrees <= 2p-2) of the cyclic-homology groups,
/// with weights, including the degree -1 boundary class.
pub fn tc_low_degree_table(p: u64) -> BTreeMap<(i64, u32), usize> {
    let pi = p as i64;
    let mut out: BTreeMap<(i64, u32), usize> = BTreeMap::new();
    let mut add = |n: i64, w: u32| *out.entry((n, w)).or_insert(0) += 1;
    add(-1, 0); // boundary class
    add(0, 0); // unit
    for i in 0..=(pi - 3) {
        add(2 * i + 3, ((i + 1) % (pi - 1)) as u32); // u^i a0
    }
    for dd in 1..=(pi - 1) {
        add(2 * pi - 1 - 2 * dd, 0); // lambda1 t^d
    }
    add(2 * pi - 2, 0); // bd lambda1
    out
}

/// Dimensions of a DimSpec per (total degree, weight) over a range.
pub fn dims_by_degree_weight(
    spec: &DimSpec,
    lo: i64,
    hi: i64,
) -> BTreeMap<(i64, u32), usize> {
    let mut out = BTreeMap::new();
    let window = Window::total(lo, hi);
    for c in spec.enumerate(&window).expect("finite spec enumeration") {
        *out.entry((c.total(), c.weight)).or_insert(0) += 1;
    }
    out
}
