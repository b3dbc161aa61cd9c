//! Page shapes and differential schedules for the cyclic-group Tate and
//! homotopy fixed-point towers over the truncated-polynomial ring, and
//! for their circle-limit analogues.
//!
//! Conventions: pages live over one generator table containing the ring
//! generators at filtration zero, a filtration class `t` of bidegree
//! (-2, 0), and an exterior class `un` of bidegree (-1, 0). The twist
//! of a monomial is exp(t) - exp(mu); Tate pages carry Laurent blocks
//! P(t^(+-step)) as divisibility conditions on the twist, fixed-point
//! pages carry P(mu^(+-step)) the same way.

use graded_core::{parse_ring_config, Element, GenId, Gens, Monomial, RingSpec};
use specseq_engine::{Assign, DerivationRule, ExpRange, Page, PageTransition, Summand, TwistCond};

use crate::rn::rn;
use crate::scalars::Scalars;
use crate::thh::thh_ring_config;
use crate::ScenarioError;

/// Generator handles for one tower.
pub struct Tower {
    pub p: u64,
    pub gens: Gens,
    pub ring: RingSpec,
    pub t: GenId,
    pub mu: GenId,
    pub un: GenId,
    pub u: GenId,
    pub lambda1: GenId,
    pub a: Vec<GenId>,
    pub b: Vec<GenId>,
    /// Fixed-point flavor: mu is Laurent and t is nonnegative.
    pub fixed: bool,
}

pub fn tower(p: u64, fixed: bool) -> Result<Tower, ScenarioError> {
    let mut config = thh_ring_config(p, fixed);
    config.push_str("gen t laurent:1 t=0 s=-2 w=0\n");
    config.push_str("gen un ext t=0 s=-1 w=0\n");
    let ring = parse_ring_config(&config)?;
    let gens = ring.gens.clone();
    let a = (0..p).map(|i| gens.id(&format!("a{i}")).unwrap()).collect();
    let b = std::iter::once(gens.id("u").unwrap())
        .chain((1..p).map(|j| gens.id(&format!("b{j}")).unwrap()))
        .collect();
    Ok(Tower {
        p,
        t: gens.id("t")?,
        mu: gens.id("mu")?,
        un: gens.id("un")?,
        u: gens.id("u")?,
        lambda1: gens.id("lambda1")?,
        a,
        b,
        gens,
        ring,
        fixed,
    })
}

impl Tower {
    fn t_range(&self) -> ExpRange {
        if self.fixed {
            ExpRange::nonneg()
        } else {
            ExpRange::all()
        }
    }

    fn mu_range(&self) -> ExpRange {
        if self.fixed {
            ExpRange::all()
        } else {
            ExpRange::nonneg()
        }
    }

    fn elem(&self, coeff: i64, parts: &[(GenId, i64)]) -> Element {
        Element::from_monomial(Monomial::from_exps(parts.to_vec()), coeff, self.p)
    }

    fn page(&self, label: &str, summands: Vec<Summand>, normalizer: Option<RingSpec>) -> Page {
        Page {
            label: label.to_string(),
            p: self.p,
            gens: self.gens.clone(),
            summands,
            normalizer,
            t_gen: Some(self.t),
            mu_gen: Some(self.mu),
        }
    }
}

/// Which components of the m-th torsion block a page carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TorsionPart {
    Lambda2,
    Lambda1,
    A1,
}

/// Shape parameters of a "main + families + torsion" page.
pub struct PageShape {
    pub label: String,
    /// Twist divisible by p^step_pow on the main summand.
    pub step_pow: u32,
    /// Height of the (t mu)-power factor on main and family summands
    /// (None = polynomial).
    pub tmu_height: Option<i64>,
    /// Main and family summands carry the exterior filtration class.
    pub with_un: bool,
    /// v_p of the twist on the a/b family summands, if present.
    pub families_vp: Option<u32>,
    /// Torsion blocks (m, parts), always carrying `un` when the tower
    /// has one.
    pub torsion: Vec<(usize, Vec<TorsionPart>)>,
    /// Torsion blocks carry the exterior filtration class.
    pub torsion_un: bool,
}

impl Tower {
    /// The tmu-power exponent is the t-exponent on fixed-point pages
    /// and the mu-exponent on Tate pages.
    fn tmu_gen(&self) -> GenId {
        if self.fixed {
            self.t
        } else {
            self.mu
        }
    }

    fn free_gen(&self) -> GenId {
        if self.fixed {
            self.mu
        } else {
            self.t
        }
    }

    fn free_range(&self) -> ExpRange {
        if self.fixed {
            self.mu_range()
        } else {
            self.t_range()
        }
    }

    fn tmu_range(&self, height: Option<i64>) -> ExpRange {
        match height {
            Some(h) => ExpRange::upto(h),
            None => {
                if self.fixed {
                    self.t_range()
                } else {
                    self.mu_range()
                }
            }
        }
    }

    pub fn build_page(&self, shape: &PageShape) -> Page {
        let p = self.p as i64;
        let mut summands = Vec::new();
        let base = |tmu: ExpRange| -> Vec<(GenId, ExpRange)> {
            vec![(self.tmu_gen(), tmu), (self.free_gen(), self.free_range())]
        };
        let with_un = |mut v: Vec<(GenId, ExpRange)>, un: bool| -> Vec<(GenId, ExpRange)> {
            if un {
                v.push((self.un, ExpRange::exterior()));
            }
            v
        };

        // main summand
        let mut main = with_un(base(self.tmu_range(shape.tmu_height)), shape.with_un);
        main.push((self.lambda1, ExpRange::exterior()));
        main.push((self.a[1], ExpRange::exterior()));
        main.push((self.b[1], ExpRange::upto(p - 1)));
        summands.push(Summand::new(main, TwistCond::DivByPw(shape.step_pow)));

        // a/b families
        if let Some(vp) = shape.families_vp {
            let mut fam_a = with_un(base(self.tmu_range(shape.tmu_height)), shape.with_un);
            fam_a.push((self.lambda1, ExpRange::exterior()));
            fam_a.push((self.a[1], ExpRange::bounded(1, 2)));
            fam_a.push((self.b[1], ExpRange::upto(p - 2)));
            summands.push(Summand::new(fam_a, TwistCond::VpEq(vp)));

            let mut fam_b = with_un(base(self.tmu_range(shape.tmu_height)), shape.with_un);
            fam_b.push((self.lambda1, ExpRange::exterior()));
            fam_b.push((self.b[1], ExpRange::bounded(1, p - 1)));
            summands.push(Summand::new(fam_b, TwistCond::VpEq(vp)));
        }

        // torsion blocks
        for (m, parts) in &shape.torsion {
            let m = *m as i64;
            for part in parts {
                match part {
                    TorsionPart::Lambda2 => {
                        let mut s =
                            with_un(base(ExpRange::upto(rn(self.p, 2 * m))), shape.torsion_un);
                        s.push((self.lambda1, ExpRange::exterior()));
                        s.push((self.a[1], ExpRange::bounded(1, 2)));
                        s.push((self.b[1], ExpRange::bounded(p - 2, p - 1)));
                        let vp = if self.fixed { 2 * m - 1 } else { 2 * m + 1 };
                        summands.push(Summand::new(s, TwistCond::VpEq(vp as u32)));
                    }
                    TorsionPart::Lambda1 => {
                        let mut s =
                            with_un(base(ExpRange::upto(rn(self.p, 2 * m - 1))), shape.torsion_un);
                        s.push((self.lambda1, ExpRange::bounded(1, 2)));
                        s.push((self.a[1], ExpRange::exterior()));
                        s.push((self.b[1], ExpRange::upto(p - 1)));
                        let vp = if self.fixed { 2 * m - 2 } else { 2 * m };
                        summands.push(Summand::new(s, TwistCond::VpEq(vp as u32)));
                    }
                    TorsionPart::A1 => {
                        if self.fixed && m == 1 {
                            // the depth-one block degenerates to classes
                            // a_i mu^l of (t mu)-height one
                            for i in 0..self.p as usize {
                                if i == 1 {
                                    continue;
                                }
                                let mut s = with_un(
                                    vec![
                                        (self.t, ExpRange::upto(1)),
                                        (self.mu, ExpRange::all()),
                                    ],
                                    shape.torsion_un,
                                );
                                s.push((self.lambda1, ExpRange::exterior()));
                                s.push((self.a[i], ExpRange::bounded(1, 2)));
                                s.push((self.b[1], ExpRange::upto(p - 2)));
                                summands.push(Summand::new(s, TwistCond::Any));
                            }
                        } else {
                            let mut s = with_un(
                                base(ExpRange::upto(rn(self.p, 2 * m - 2) + 1)),
                                shape.torsion_un,
                            );
                            s.push((self.lambda1, ExpRange::exterior()));
                            s.push((self.a[1], ExpRange::bounded(1, 2)));
                            s.push((self.b[1], ExpRange::upto(p - 2)));
                            let vp = if self.fixed { 2 * m - 3 } else { 2 * m - 1 };
                            summands.push(Summand::new(s, TwistCond::VpEq(vp as u32)));
                        }
                    }
                }
            }
        }
        self.page(&shape.label, summands, None)
    }

    /// The E^2-term: the full ring tensor the group-cohomology factors.
    pub fn e2_page(&self, label: &str, with_un: bool) -> Page {
        let p = self.p as i64;
        let mut summands = Vec::new();
        let common = |v: &mut Vec<(GenId, ExpRange)>| {
            v.push((self.t, self.t_range()));
            v.push((self.mu, self.mu_range()));
            v.push((self.lambda1, ExpRange::exterior()));
            if with_un {
                v.push((self.un, ExpRange::exterior()));
            }
        };
        // normal-form shapes of the ring: u-powers, u-powers times one
        // a-generator, u-powers times one b-generator
        let mut s_u = Vec::new();
        common(&mut s_u);
        s_u.push((self.u, ExpRange::upto(p - 1)));
        summands.push(Summand::new(s_u, TwistCond::Any));
        for j in 0..self.p as usize {
            let mut s = Vec::new();
            common(&mut s);
            let u_max = if j == self.p as usize - 1 { p - 1 } else { p - 2 };
            s.push((self.u, ExpRange::upto(u_max)));
            s.push((self.a[j], ExpRange::bounded(1, 2)));
            summands.push(Summand::new(s, TwistCond::Any));
        }
        for j in 1..self.p as usize {
            let mut s = Vec::new();
            common(&mut s);
            s.push((self.u, ExpRange::upto(p - 2)));
            s.push((self.b[j], ExpRange::bounded(1, 2)));
            summands.push(Summand::new(s, TwistCond::Any));
        }
        self.page(label, summands, Some(self.ring.clone()))
    }

    /// The E^3-term: free over the Laurent/power block on the exterior
    /// classes and the truncated higher Bott class, plus (fixed points
    /// only) the degenerate depth-one classes a_i mu^l.
    pub fn e3_page(&self, label: &str, with_un: bool) -> Page {
        let p = self.p as i64;
        let mut summands = Vec::new();
        let mut main = vec![
            (self.t, self.t_range()),
            (self.mu, self.mu_range()),
            (self.lambda1, ExpRange::exterior()),
            (self.a[1], ExpRange::exterior()),
            (self.b[1], ExpRange::upto(p - 1)),
        ];
        if with_un {
            main.push((self.un, ExpRange::exterior()));
        }
        summands.push(Summand::new(main, TwistCond::Any));
        if self.fixed {
            for i in 0..self.p as usize {
                if i == 1 {
                    continue;
                }
                let mut s = vec![
                    (self.t, ExpRange::upto(1)),
                    (self.mu, ExpRange::all()),
                    (self.lambda1, ExpRange::exterior()),
                    (self.a[i], ExpRange::bounded(1, 2)),
                    (self.b[1], ExpRange::upto(p - 2)),
                ];
                if with_un {
                    s.push((self.un, ExpRange::exterior()));
                }
                summands.push(Summand::new(s, TwistCond::Any));
            }
        }
        self.page(label, summands, None)
    }

    /// d^2 on the E^2-term: the connection differential on the higher
    /// Bott ladder, with its exact coefficients.
    pub fn d2_rule(&self) -> DerivationRule {
        let mut assigns = Vec::new();
        for (i, &bi) in self.b.iter().enumerate() {
            let coeff = 1 - i as i64;
            if coeff.rem_euclid(self.p as i64) == 0 {
                continue;
            }
            assigns.push(Assign::OnGen {
                gen: bi,
                target: self.elem(coeff, &[(self.a[i], 1), (self.t, 1)]),
            });
        }
        DerivationRule { r: 2, assigns }
    }

    fn lambda1_mult(&self, scalars: &mut Scalars, k: i64) -> Element {
        // d(block) / block for the exterior-class differential of the
        // k-th triple: lambda1 t^(p^(2k+1)) (tmu)^(r(2k-1)) in Tate
        // coordinates, its mu-translate on fixed points
        let p = self.p as i64;
        let c = scalars.unit();
        let big_r = rn(self.p, 2 * k + 1);
        if self.fixed {
            self.elem(
                c,
                &[
                    (self.lambda1, 1),
                    (self.t, big_r),
                    (self.mu, big_r - p.pow(2 * k as u32 + 1)),
                ],
            )
        } else {
            self.elem(
                c,
                &[
                    (self.lambda1, 1),
                    (self.t, p.pow(2 * k as u32 + 1) + rn(self.p, 2 * k - 1)),
                    (self.mu, rn(self.p, 2 * k - 1)),
                ],
            )
        }
    }

    fn lambda2_mult(&self, scalars: &mut Scalars, k: i64) -> Element {
        let p = self.p as i64;
        let c = scalars.unit();
        let big_r = rn(self.p, 2 * k + 2);
        if self.fixed {
            self.elem(
                c,
                &[
                    (self.a[1], 1),
                    (self.b[1], p - 2),
                    (self.t, big_r),
                    (self.mu, big_r - p.pow(2 * k as u32 + 2)),
                ],
            )
        } else {
            self.elem(
                c,
                &[
                    (self.a[1], 1),
                    (self.b[1], p - 2),
                    (self.t, p.pow(2 * k as u32 + 2) + rn(self.p, 2 * k)),
                    (self.mu, rn(self.p, 2 * k)),
                ],
            )
        }
    }

    fn family_target(&self, scalars: &mut Scalars, k: i64) -> Element {
        // b-family to a-family of the k-th triple
        let p = self.p as i64;
        let c = scalars.unit();
        if self.fixed {
            let r = rn(self.p, 2 * k - 2) + 1;
            self.elem(
                c,
                &[
                    (self.a[1], 1),
                    (self.t, r),
                    (self.mu, r - p.pow(2 * k as u32 - 2)),
                ],
            )
        } else {
            let r = rn(self.p, 2 * k - 2) + 1;
            self.elem(
                c,
                &[(self.a[1], 1), (self.t, p.pow(2 * k as u32) + r), (self.mu, r)],
            )
        }
    }

    fn final_target(&self, scalars: &mut Scalars, n: i64) -> Element {
        let p = self.p as i64;
        let c = scalars.unit();
        if self.fixed {
            let r = rn(self.p, 2 * n) + 1;
            self.elem(c, &[(self.t, r), (self.mu, r - p.pow(2 * n as u32))])
        } else {
            let r = rn(self.p, 2 * n - 2) + 1;
            self.elem(c, &[(self.t, p.pow(2 * n as u32) + r), (self.mu, r)])
        }
    }

    fn dir(&self) -> i64 {
        if self.fixed {
            -1
        } else {
            1
        }
    }
}

fn full_torsion(up_to: usize) -> Vec<(usize, Vec<TorsionPart>)> {
    (1..=up_to)
        .map(|m| {
            (
                m,
                vec![TorsionPart::Lambda2, TorsionPart::Lambda1, TorsionPart::A1],
            )
        })
        .collect()
}

/// The full schedule of active pages of the depth-n Tate tower, each
/// transition carrying its claimed source and target presentation.
pub fn cpn_tate_schedule(
    p: u64,
    n: i64,
    seed: u64,
) -> Result<Vec<PageTransition>, ScenarioError> {
    tower_schedule(p, n, seed, false)
}

/// The depth-n fixed-point tower (with the degree-2p^2 class inverted).
pub fn cpn_fixed_schedule(
    p: u64,
    n: i64,
    seed: u64,
) -> Result<Vec<PageTransition>, ScenarioError> {
    tower_schedule(p, n, seed, true)
}

fn tower_schedule(
    p: u64,
    n: i64,
    seed: u64,
    fixed: bool,
) -> Result<Vec<PageTransition>, ScenarioError> {
    let tw = tower(p, fixed)?;
    let mut scalars = Scalars::new(p, seed);
    let pi = p as i64;
    let group = format!("C_p^{n}");
    let kind = if fixed { "fixed" } else { "Tate" };
    let label = |r: String| format!("{kind}({group}) E^{r}");

    let mut out = Vec::new();
    let e2 = tw.e2_page(&label("2".into()), true);
    let e3 = tw.e3_page(&label("3".into()), true);
    out.push(PageTransition {
        source: e2,
        rule: tw.d2_rule(),
        target: e3.clone(),
    });

    // d^(2p): the exterior-class differential of the zeroth triple
    let e2p1 = tw.build_page(&PageShape {
        label: label(format!("{}", 2 * pi + 1)),
        step_pow: 1,
        tmu_height: None,
        with_un: true,
        families_vp: None,
        torsion: if fixed {
            vec![(1, vec![TorsionPart::Lambda1, TorsionPart::A1])]
        } else {
            vec![]
        },
        torsion_un: true,
    });
    out.push(PageTransition {
        source: e3,
        rule: DerivationRule {
            r: 2 * pi,
            assigns: vec![Assign::TwistStep {
                step: 1,
                dir: tw.dir(),
                mult: tw.lambda1_mult(&mut scalars, 0),
            }],
        },
        target: e2p1.clone(),
    });

    // d^(2p^2): first page with families
    let c_page = |k: i64| -> PageShape {
        PageShape {
            label: label(format!("{}", 2 * rn(p, 2 * k + 2) + 1)),
            step_pow: 2 * k as u32 + 2,
            tmu_height: None,
            with_un: true,
            families_vp: Some(2 * k as u32 + 1),
            torsion: if fixed {
                full_torsion(k as usize + 1)
            } else {
                full_torsion(k as usize)
            },
            torsion_un: true,
        }
    };
    let c0 = tw.build_page(&c_page(0));
    out.push(PageTransition {
        source: e2p1,
        rule: DerivationRule {
            r: 2 * pi * pi,
            assigns: vec![Assign::TwistStep {
                step: pi,
                dir: tw.dir(),
                mult: tw.lambda2_mult(&mut scalars, 0),
            }],
        },
        target: c0.clone(),
    });

    let mut prev = c0;
    for k in 1..n {
        // triple of differentials at the k-th stage
        let fam_vp = if fixed { 2 * k - 3 + 2 } else { 2 * k - 1 };
        let _ = fam_vp;
        let (a_extra, b_extra) = if fixed {
            // fixed-point torsion of the fresh block k+1 appears piecewise
            (
                vec![(k as usize + 1, vec![TorsionPart::A1])],
                vec![(k as usize + 1, vec![TorsionPart::Lambda1, TorsionPart::A1])],
            )
        } else {
            (
                vec![(k as usize, vec![TorsionPart::A1])],
                vec![(k as usize, vec![TorsionPart::Lambda1, TorsionPart::A1])],
            )
        };
        let lower = if fixed {
            full_torsion(k as usize)
        } else {
            full_torsion(k as usize - 1)
        };
        let a_k = tw.build_page(&PageShape {
            label: label(format!("{}", 2 * rn(p, 2 * k) + 3)),
            step_pow: 2 * k as u32,
            tmu_height: None,
            with_un: true,
            families_vp: None,
            torsion: [lower.clone(), a_extra].concat(),
            torsion_un: true,
        });
        let b_k = tw.build_page(&PageShape {
            label: label(format!("{}", 2 * rn(p, 2 * k + 1) + 1)),
            step_pow: 2 * k as u32 + 1,
            tmu_height: None,
            with_un: true,
            families_vp: None,
            torsion: [lower, b_extra].concat(),
            torsion_un: true,
        });
        let c_k = tw.build_page(&c_page(k));
        let family_vp = if fixed { 2 * k as u32 - 1 } else { 2 * k as u32 - 1 };
        let fam_k = if fixed { k + 1 } else { k };
        out.push(PageTransition {
            source: prev,
            rule: DerivationRule {
                r: 2 * rn(p, 2 * k) + 2,
                assigns: vec![Assign::OnFamily {
                    base_in: tw.b[1],
                    vp: family_vp,
                    target: tw.family_target(&mut scalars, fam_k),
                }],
            },
            target: a_k.clone(),
        });
        out.push(PageTransition {
            source: a_k,
            rule: DerivationRule {
                r: 2 * rn(p, 2 * k + 1),
                assigns: vec![Assign::TwistStep {
                    step: pi.pow(2 * k as u32),
                    dir: tw.dir(),
                    mult: tw.lambda1_mult(&mut scalars, k),
                }],
            },
            target: b_k.clone(),
        });
        out.push(PageTransition {
            source: b_k,
            rule: DerivationRule {
                r: 2 * rn(p, 2 * k + 2),
                assigns: vec![Assign::TwistStep {
                    step: pi.pow(2 * k as u32 + 1),
                    dir: tw.dir(),
                    mult: tw.lambda2_mult(&mut scalars, k),
                }],
            },
            target: c_k.clone(),
        });
        prev = c_k;
    }

    // the closing differential on the filtration class
    let heights = if fixed {
        rn(p, 2 * n) + 1
    } else {
        rn(p, 2 * n - 2) + 1
    };
    let einf = tw.build_page(&PageShape {
        label: label("inf".into()),
        step_pow: 2 * n as u32,
        tmu_height: Some(heights),
        with_un: false,
        families_vp: Some(2 * n as u32 - 1),
        torsion: full_torsion(if fixed { n as usize } else { n as usize - 1 }),
        torsion_un: true,
    });
    out.push(PageTransition {
        source: prev,
        rule: DerivationRule {
            r: 2 * rn(p, 2 * n) + 1,
            assigns: vec![Assign::OnGen {
                gen: tw.un,
                target: tw.final_target(&mut scalars, n),
            }],
        },
        target: einf,
    });
    Ok(out)
}

/// Circle-limit schedules: no filtration exterior class, no closing
/// differential. The tower runs its triples up to `k_max` and the last
/// claimed page stands in for the limit page inside a bounded window.
pub fn s1_tate_schedule(
    p: u64,
    k_max: i64,
    seed: u64,
) -> Result<Vec<PageTransition>, ScenarioError> {
    s1_schedule(p, k_max, seed, false)
}

pub fn s1_fixed_schedule(
    p: u64,
    k_max: i64,
    seed: u64,
) -> Result<Vec<PageTransition>, ScenarioError> {
    s1_schedule(p, k_max, seed, true)
}

fn s1_schedule(
    p: u64,
    k_max: i64,
    seed: u64,
    fixed: bool,
) -> Result<Vec<PageTransition>, ScenarioError> {
    let tw = tower(p, fixed)?;
    let mut scalars = Scalars::new(p, seed);
    let pi = p as i64;
    let kind = if fixed { "fixed" } else { "Tate" };
    let label = |r: String| format!("{kind}(S^1) E^{r}");

    let mut out = Vec::new();
    let e2 = tw.e2_page(&label("2".into()), false);
    let e3 = tw.e3_page(&label("3".into()), false);
    out.push(PageTransition {
        source: e2,
        rule: tw.d2_rule(),
        target: e3.clone(),
    });
    let shape = |k: i64, step_pow: u32, families: Option<u32>, torsion| PageShape {
        label: label(format!("{}", 2 * rn(p, k) + 1)),
        step_pow,
        tmu_height: None,
        with_un: false,
        families_vp: families,
        torsion,
        torsion_un: false,
    };
    let e2p1 = tw.build_page(&shape(
        1,
        1,
        None,
        if fixed {
            vec![(1, vec![TorsionPart::Lambda1, TorsionPart::A1])]
        } else {
            vec![]
        },
    ));
    out.push(PageTransition {
        source: e3,
        rule: DerivationRule {
            r: 2 * pi,
            assigns: vec![Assign::TwistStep {
                step: 1,
                dir: tw.dir(),
                mult: tw.lambda1_mult(&mut scalars, 0),
            }],
        },
        target: e2p1.clone(),
    });
    let c_shape = |k: i64| {
        shape(
            2 * k + 2,
            2 * k as u32 + 2,
            Some(2 * k as u32 + 1),
            full_torsion(if fixed { k as usize + 1 } else { k as usize }),
        )
    };
    let c0 = tw.build_page(&c_shape(0));
    out.push(PageTransition {
        source: e2p1,
        rule: DerivationRule {
            r: 2 * pi * pi,
            assigns: vec![Assign::TwistStep {
                step: pi,
                dir: tw.dir(),
                mult: tw.lambda2_mult(&mut scalars, 0),
            }],
        },
        target: c0.clone(),
    });
    let mut prev = c0;
    for k in 1..=k_max {
        let lower = if fixed {
            full_torsion(k as usize)
        } else {
            full_torsion(k as usize - 1)
        };
        let a_k = tw.build_page(&PageShape {
            torsion: [
                lower.clone(),
                vec![(
                    if fixed { k as usize + 1 } else { k as usize },
                    vec![TorsionPart::A1],
                )],
            ]
            .concat(),
            ..shape(2 * k, 2 * k as u32, None, vec![])
        });
        let b_k = tw.build_page(&PageShape {
            torsion: [
                lower,
                vec![(
                    if fixed { k as usize + 1 } else { k as usize },
                    vec![TorsionPart::Lambda1, TorsionPart::A1],
                )],
            ]
            .concat(),
            ..shape(2 * k + 1, 2 * k as u32 + 1, None, vec![])
        });
        let c_k = tw.build_page(&c_shape(k));
        out.push(PageTransition {
            source: prev,
            rule: DerivationRule {
                r: 2 * rn(p, 2 * k) + 2,
                assigns: vec![Assign::OnFamily {
                    base_in: tw.b[1],
                    vp: 2 * k as u32 - 1,
                    target: tw.family_target(&mut scalars, if fixed { k + 1 } else { k }),
                }],
            },
            target: a_k.clone(),
        });
        out.push(PageTransition {
            source: a_k,
            rule: DerivationRule {
                r: 2 * rn(p, 2 * k + 1),
                assigns: vec![Assign::TwistStep {
                    step: pi.pow(2 * k as u32),
                    dir: tw.dir(),
                    mult: tw.lambda1_mult(&mut scalars, k),
                }],
            },
            target: b_k.clone(),
        });
        out.push(PageTransition {
            source: b_k,
            rule: DerivationRule {
                r: 2 * rn(p, 2 * k + 2),
                assigns: vec![Assign::TwistStep {
                    step: pi.pow(2 * k as u32 + 1),
                    dir: tw.dir(),
                    mult: tw.lambda2_mult(&mut scalars, k),
                }],
            },
            target: c_k.clone(),
        });
        prev = c_k;
    }
    Ok(out)
}

/// The circle-limit page: twist pinned to zero on the main summand,
/// torsion blocks up to `m_max`.
pub fn s1_limit_page(p: u64, fixed: bool, m_max: usize) -> Result<Page, ScenarioError> {
    let tw = tower(p, fixed)?;
    let page = tw.build_page(&PageShape {
        label: format!("{}(S^1) E^inf", if fixed { "fixed" } else { "Tate" }),
        step_pow: 0,
        tmu_height: None,
        with_un: false,
        families_vp: None,
        torsion: full_torsion(m_max),
        torsion_un: false,
    });
    // the limit main block carries no Laurent direction at all: pin the
    // twist to zero
    let mut page = page;
    page.summands[0].twist = TwistCond::Zero;
    Ok(page)
}
