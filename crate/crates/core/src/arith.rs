//! Integer utilities: Möbius function, necklace counts, base-q digit sums.

/// μ(n) for n ≥ 1.
pub fn mobius(n: u64) -> i64 {
    assert!(n >= 1, "mobius is defined for n >= 1");
    let mut n = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// M_d(q) = (1/d) Σ_{l | d} μ(l) q^{d/l}, the number of monic irreducibles of degree d.
pub fn necklace_count(q: u64, d: u32) -> u128 {
    assert!(d >= 1, "necklace count needs d >= 1");
    let q = q as i128;
    let d64 = d as u64;
    let total: i128 =
        (1..=d64).filter(|l| d64.is_multiple_of(*l)).map(|l| mobius(l) as i128 * q.pow((d64 / l) as u32)).sum();
    (total / d as i128) as u128
}

/// ℓ_q(n), the sum of the base-q digits of n.
pub fn digit_sum(q: u64, mut n: u64) -> u64 {
    let mut s = 0;
    while n > 0 {
        s += n % q;
        n /= q;
    }
    s
}

/// 1 + q + ... + q^k style sums: Σ_{n=from}^{to} q^n, zero when the range is empty.
pub fn geometric_sum(q: u64, from: u32, to: u32) -> i128 {
    (from..=to).map(|n| (q as i128).pow(n)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn mobius_small_values() {
        let mu: Vec<i64> = (1..=12).map(mobius).collect();
        assert_eq!(mu, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
    }

    #[test]
    fn necklace_examples() {
        assert_eq!(necklace_count(3, 1), 3);
        assert_eq!(necklace_count(3, 2), 3);
        assert_eq!(necklace_count(3, 4), 18);
        assert_eq!(necklace_count(4, 3), 20);
    }

    #[test]
    fn digit_sum_examples() {
        assert_eq!(digit_sum(3, 7), 3);
        assert_eq!(digit_sum(3, 25), 5);
        assert_eq!(digit_sum(4, 14), 5);
        assert_eq!(digit_sum(3, 0), 0);
    }

    proptest! {
        // Σ_{l | d} l·M_l(q) = q^d
        #[test]
        fn necklace_counts_partition_field_elements(q in 2u64..8, d in 1u32..9) {
            let total: u128 = (1..=d).filter(|l| d % l == 0)
                .map(|l| l as u128 * necklace_count(q, l)).sum();
            prop_assert_eq!(total, (q as u128).pow(d));
        }

        #[test]
        fn mobius_sums_to_zero_over_divisors(n in 2u64..500) {
            let s: i64 = (1..=n).filter(|l| n % l == 0).map(mobius).sum();
            prop_assert_eq!(s, 0);
        }
    }
}
