/// The page-schedule function: r(n) = 0 for n <= 0 and
/// r(n) = p^n + r(n-2) for n >= 1, so r(2n-1) sums the odd powers of p
/// up to p^(2n-1) and r(2n) the even powers up to p^(2n).
pub fn rn(p: u64, n: i64) -> i64 {
    if n <= 0 {
        0
    } else {
        (p as i64).pow(n as u32) + rn(p, n - 2)
    }
}

pub fn rn_table(p: u64, up_to: i64) -> Vec<(i64, i64)> {
    (0..=up_to).map(|n| (n, rn(p, n))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_cases_vanish() {
        assert_eq!(rn(5, 0), 0);
        assert_eq!(rn(5, -3), 0);
    }

    #[test]
    fn odd_and_even_power_sums_at_p5() {
        assert_eq!(rn(5, 3), 130); // p^3 + p
        assert_eq!(rn(5, 4), 650); // p^4 + p^2
    }

    #[test]
    fn recursion_holds_through_twelve() {
        for p in [3u64, 5, 7] {
            for n in 1..=12i64 {
                assert_eq!(rn(p, n), (p as i64).pow(n as u32) + rn(p, n - 2));
            }
        }
    }
}
