use std::collections::BTreeMap;

/// Graded dimensions of three terms of a long exact sequence
/// ... -> A_n -> B_n -> C_n -> A_(n-1) -> ... over a degree range.
#[derive(Clone, Debug)]
pub struct LesData {
    pub a: BTreeMap<i64, usize>,
    pub b: BTreeMap<i64, usize>,
    pub c: BTreeMap<i64, usize>,
    pub lo: i64,
    pub hi: i64,
}

#[derive(Clone, Debug)]
pub struct LesResult {
    pub feasible: bool,
    pub failing_degree: Option<i64>,
    /// ranks (f_n, g_n, h_n) of A_n -> B_n, B_n -> C_n, C_n -> A_(n-1)
    pub ranks: BTreeMap<i64, (usize, usize, usize)>,
}

/// Decide whether nonnegative map ranks exist making every three-term
/// segment exact. Exactness forces the linear recursion
/// g_n = C_n - h_n, f_n = B_n - g_n, h_(n+1) = A_n - f_n
/// starting from h_lo = 0, so feasibility is the nonnegativity of the
/// computed ranks. Dimensions below `lo` must vanish (or `lo` must cut
/// the sequence at a zero region); above `hi` the sequence may
/// continue, so no terminal condition is imposed.
pub fn les_feasible(data: &LesData) -> LesResult {
    let dim = |m: &BTreeMap<i64, usize>, n: i64| -> i64 { *m.get(&n).unwrap_or(&0) as i64 };
    let mut ranks = BTreeMap::new();
    let mut h = 0i64; // rank of C_lo -> A_(lo-1), zero at the boundary
    for n in data.lo..=data.hi {
        let g = dim(&data.c, n) - h;
        if g < 0 {
            return LesResult {
                feasible: false,
                failing_degree: Some(n),
                ranks,
            };
        }
        let f = dim(&data.b, n) - g;
        if f < 0 {
            return LesResult {
                feasible: false,
                failing_degree: Some(n),
                ranks,
            };
        }
        let h_next = dim(&data.a, n) - f;
        if h_next < 0 {
            return LesResult {
                feasible: false,
                failing_degree: Some(n),
                ranks,
            };
        }
        ranks.insert(n, (f as usize, g as usize, h as usize));
        h = h_next;
    }
    LesResult {
        feasible: true,
        failing_degree: None,
        ranks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(pairs: &[(i64, usize)]) -> BTreeMap<i64, usize> {
        pairs.iter().copied().collect()
    }

    #[test]
    fn zero_a_needs_equal_b_and_c() {
        let ok = les_feasible(&LesData {
            a: table(&[]),
            b: table(&[(0, 2), (3, 1)]),
            c: table(&[(0, 2), (3, 1)]),
            lo: -1,
            hi: 5,
        });
        assert!(ok.feasible);

        let bad = les_feasible(&LesData {
            a: table(&[]),
            b: table(&[(0, 2)]),
            c: table(&[(0, 1)]),
            lo: -1,
            hi: 5,
        });
        assert!(!bad.feasible);
        assert_eq!(bad.failing_degree, Some(0));
    }

    #[test]
    fn connecting_map_shifts_a_class_down() {
        // B has a class in degree 3; C has classes in degrees 3 and 4;
        // A has one class in degree 3 absorbing the connecting map from
        // C_4: exact
        let r = les_feasible(&LesData {
            a: table(&[(3, 1)]),
            b: table(&[(3, 1)]),
            c: table(&[(3, 1), (4, 1)]),
            lo: 0,
            hi: 6,
        });
        assert!(r.feasible);
        assert_eq!(r.ranks[&4], (0, 0, 1));
    }
}
