//! Exhaustive checks of the primitive-divisor and ratio results against
//! direct arithmetic.

use primegraph_core::numtheory::{factor, is_prime, ratio_prime_power_check, zsigmondy};

fn is_zsigmondy_exception(a: u128, n: u32) -> bool {
    (a == 2 && n == 6) || (n == 2 && (a + 1).is_power_of_two())
}

#[test]
fn zsigmondy_grid() {
    for a in 2u128..=10 {
        for n in 2u32..=20 {
            let got = zsigmondy(a, n).unwrap();
            assert_eq!(
                got.is_none(),
                is_zsigmondy_exception(a, n),
                "a = {a}, n = {n}"
            );
            if let Some(l) = got {
                assert!(is_prime(l));
                assert_eq!((a.pow(n) - 1) % l, 0, "a = {a}, n = {n}");
                for m in 1..n {
                    assert_ne!((a.pow(m) - 1) % l, 0, "a = {a}, n = {n}, m = {m}");
                }
            }
        }
    }
}

/// Prime power test by repeated division, independent of the factorizer's
/// structure.
fn oracle_prime_power(mut n: u128) -> bool {
    let p = factor(n).unwrap().primes()[0];
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

#[test]
fn ratio_never_a_prime_power_up_to_60() {
    let mut checked = 0;
    for f in 6u32..=60 {
        for b in 1..f {
            if f % b != 0 {
                continue;
            }
            let n = f / b;
            if n < 3 || !is_prime(n as u128) {
                continue;
            }
            let r = ratio_prime_power_check(f, b).unwrap();
            let direct = ((1u128 << (2 * f)) - 1) / ((1u128 << (2 * b)) - 1);
            assert_eq!(r.ratio.value(), direct);
            assert_eq!(
                r.ratio
                    .factors()
                    .iter()
                    .map(|(p, e)| p.pow(*e))
                    .product::<u128>(),
                direct
            );
            assert!(!r.is_prime_power, "f = {f}, b = {b}: {}", r.ratio);
            assert!(!oracle_prime_power(direct));
            checked += 1;
        }
    }
    assert!(checked > 50);
    let six = ratio_prime_power_check(6, 2).unwrap();
    assert_eq!(six.ratio.primes(), vec![3, 7, 13]);
}
