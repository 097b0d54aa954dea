//! Exact integer arithmetic on `u128`: factorization, prime supports,
//! prime-power detection and primitive prime divisors.
//!
//! Factorization runs trial division up to [`TRIAL_BOUND`], then Brent's
//! variant of Pollard rho seeded from a fixed ChaCha stream so the output
//! never depends on run order or thread count. Primality uses Miller-Rabin
//! with the first thirteen prime bases, which is deterministic for every
//! input below 3.3 * 10^24 (and in particular below 2^64).

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};
use thiserror::Error;

/// Trial division covers every prime below this bound.
pub const TRIAL_BOUND: u64 = 1_000_000;

const RHO_SEED: u64 = 0x7072_696d_6567_7261;

const MR_BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumError {
    #[error("zero has no factorization")]
    Zero,
    #[error("{0} is neither a prime power nor composite in this context")]
    NotAboveOne(u128),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{0} does not fit in 128 bits")]
    Overflow(String),
}

/// A positive integer together with its complete prime factorization.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FactoredInteger {
    value: u128,
    factors: BTreeMap<u128, u32>,
}

impl FactoredInteger {
    pub fn value(&self) -> u128 {
        self.value
    }

    pub fn factors(&self) -> &BTreeMap<u128, u32> {
        &self.factors
    }

    /// Distinct primes, ascending.
    pub fn primes(&self) -> Vec<u128> {
        self.factors.keys().copied().collect()
    }

    pub fn num_primes(&self) -> usize {
        self.factors.len()
    }

    /// `Some((p, k))` when the value is `p^k` with `k >= 1`.
    pub fn as_prime_power(&self) -> Option<(u128, u32)> {
        if self.factors.len() == 1 {
            self.factors.iter().next().map(|(&p, &k)| (p, k))
        } else {
            None
        }
    }

    /// The largest divisor coprime to `p`.
    pub fn without_prime(&self, p: u128) -> FactoredInteger {
        let mut factors = self.factors.clone();
        let mut value = self.value;
        if let Some(k) = factors.remove(&p) {
            for _ in 0..k {
                value /= p;
            }
        }
        FactoredInteger { value, factors }
    }
}

impl fmt::Display for FactoredInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (p, k) in &self.factors {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *k == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{k}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for FactoredInteger {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        struct Pairs<'a>(&'a BTreeMap<u128, u32>);
        impl Serialize for Pairs<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
                for (p, k) in self.0 {
                    seq.serialize_element(&(p, k))?;
                }
                seq.end()
            }
        }
        let mut st = serializer.serialize_struct("FactoredInteger", 2)?;
        st.serialize_field("value", &self.value)?;
        st.serialize_field("factors", &Pairs(&self.factors))?;
        st.end()
    }
}

/// Complete factorization of `n >= 1`.
pub fn factor(n: u128) -> Result<FactoredInteger, NumError> {
    if n == 0 {
        return Err(NumError::Zero);
    }
    let mut factors = BTreeMap::new();
    let mut rest = n;

    let tz = rest.trailing_zeros();
    if tz > 0 {
        factors.insert(2, tz);
        rest >>= tz;
    }
    let mut d: u128 = 3;
    while d < TRIAL_BOUND as u128 && d * d <= rest {
        let divides = if rest <= u64::MAX as u128 {
            (rest as u64).is_multiple_of(d as u64)
        } else {
            rest.is_multiple_of(d)
        };
        if divides {
            let mut k = 0;
            while rest.is_multiple_of(d) {
                rest /= d;
                k += 1;
            }
            factors.insert(d, k);
        }
        d += 2;
    }
    if rest > 1 {
        if rest < (TRIAL_BOUND as u128) * (TRIAL_BOUND as u128) || is_prime(rest) {
            *factors.entry(rest).or_insert(0) += 1;
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(RHO_SEED);
            let mut stack = vec![rest];
            while let Some(m) = stack.pop() {
                if is_prime(m) {
                    *factors.entry(m).or_insert(0) += 1;
                } else {
                    let d = find_divisor(m, &mut rng);
                    stack.push(d);
                    stack.push(m / d);
                }
            }
        }
    }
    Ok(FactoredInteger { value: n, factors })
}

/// The set of prime divisors of `n`, ascending. Empty for `n = 1`.
pub fn prime_support(n: u128) -> Result<Vec<u128>, NumError> {
    factor(n).map(|f| f.primes())
}

/// `Some((p, k))` with `n = p^k`, or `None` when `n` has two or more prime
/// divisors. `n <= 1` is rejected.
pub fn prime_power_part(n: u128) -> Result<Option<(u128, u32)>, NumError> {
    if n <= 1 {
        return Err(NumError::NotAboveOne(n));
    }
    Ok(factor(n)?.as_prime_power())
}

/// The least primitive prime divisor of `a^n - 1`: the smallest prime that
/// divides `a^n - 1` but none of `a^m - 1` for `1 <= m < n`.
///
/// Returns `None` exactly in the two exceptional cases `(a, n) = (2, 6)` and
/// `n = 2` with `a + 1` a power of two.
pub fn zsigmondy(a: u128, n: u32) -> Result<Option<u128>, NumError> {
    if a < 2 || n < 2 {
        return Err(NumError::InvalidArgument(format!(
            "zsigmondy needs a >= 2 and n >= 2, got a = {a}, n = {n}"
        )));
    }
    let power = a
        .checked_pow(n)
        .ok_or_else(|| NumError::Overflow(format!("{a}^{n}")))?;
    let target = factor(power - 1)?;
    for p in target.primes() {
        let residue = a % p;
        let primitive = (1..n).all(|m| pow_mod(residue, m as u128, p) != 1);
        if primitive {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RatioCheck {
    pub f: u32,
    pub b: u32,
    pub ratio: FactoredInteger,
    pub is_prime_power: bool,
}

/// Factors `(2^(2f) - 1) / (2^(2b) - 1)` where `f = n * b`, `n` an odd
/// prime and `f >= 6`, and reports whether it is a prime power.
pub fn ratio_prime_power_check(f: u32, b: u32) -> Result<RatioCheck, NumError> {
    if b == 0 || !f.is_multiple_of(b) {
        return Err(NumError::InvalidArgument(format!(
            "{b} does not divide {f}"
        )));
    }
    if f < 6 {
        return Err(NumError::InvalidArgument(format!("f = {f} is below 6")));
    }
    let n = f / b;
    if n == 2 {
        return Err(NumError::InvalidArgument(
            "f / b = 2 is excluded".to_string(),
        ));
    }
    if !is_prime(n as u128) {
        return Err(NumError::InvalidArgument(format!(
            "f / b = {n} is not prime"
        )));
    }
    if 2 * f >= 128 {
        return Err(NumError::Overflow(format!("2^{}", 2 * f)));
    }
    let numerator = (1u128 << (2 * f)) - 1;
    let denominator = (1u128 << (2 * b)) - 1;
    debug_assert_eq!(numerator % denominator, 0);
    let ratio = factor(numerator / denominator)?;
    let is_prime_power = ratio.as_prime_power().is_some();
    Ok(RatioCheck {
        f,
        b,
        ratio,
        is_prime_power,
    })
}

/// Miller-Rabin with fixed bases; exact for all `n < 3.3 * 10^24`.
pub fn is_prime(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        let p = p as u128;
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let d_shift = (n - 1).trailing_zeros();
    let d = (n - 1) >> d_shift;
    if n <= u64::MAX as u128 {
        let n64 = n as u64;
        MR_BASES
            .iter()
            .all(|&a| mr_round(a as u128, d, d_shift, n64 as u128, |x, y| x * y % n))
    } else {
        let mont = Mont::new(n);
        let one = mont.enter(1);
        let minus_one = mont.enter(n - 1);
        MR_BASES.iter().all(|&a| {
            let mut x = mont.pow(mont.enter(a as u128), d);
            if x == one || x == minus_one {
                return true;
            }
            for _ in 1..d_shift {
                x = mont.mul(x, x);
                if x == minus_one {
                    return true;
                }
            }
            false
        })
    }
}

fn mr_round(a: u128, d: u128, s: u32, n: u128, mul: impl Fn(u128, u128) -> u128) -> bool {
    let mut x = 1u128;
    let mut base = a % n;
    let mut e = d;
    while e > 0 {
        if e & 1 == 1 {
            x = mul(x, base);
        }
        base = mul(base, base);
        e >>= 1;
    }
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul(x, x);
        if x == n - 1 {
            return true;
        }
    }
    false
}

/// `base^exp mod m` for any modulus below 2^128.
pub fn pow_mod(base: u128, exp: u128, m: u128) -> u128 {
    if m == 1 {
        return 0;
    }
    if m <= u64::MAX as u128 {
        let mut result = 1u128;
        let mut b = base % m;
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result * b % m;
            }
            b = b * b % m;
            e >>= 1;
        }
        result
    } else if m & 1 == 1 {
        let mont = Mont::new(m);
        mont.leave(mont.pow(mont.enter(base % m), exp))
    } else {
        let mut result = 1u128;
        let mut b = base % m;
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = mul_mod_slow(result, b, m);
            }
            b = mul_mod_slow(b, b, m);
            e >>= 1;
        }
        result
    }
}

pub fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn add_mod(a: u128, b: u128, m: u128) -> u128 {
    let (s, overflow) = a.overflowing_add(b);
    if overflow || s >= m {
        s.wrapping_sub(m)
    } else {
        s
    }
}

fn mul_mod_slow(mut a: u128, mut b: u128, m: u128) -> u128 {
    let mut result = 0;
    a %= m;
    while b > 0 {
        if b & 1 == 1 {
            result = add_mod(result, a, m);
        }
        a = add_mod(a, a, m);
        b >>= 1;
    }
    result
}

/// Full 128x128 -> 256 bit product as (high, low).
fn widening_mul(a: u128, b: u128) -> (u128, u128) {
    const MASK: u128 = u64::MAX as u128;
    let (a_hi, a_lo) = (a >> 64, a & MASK);
    let (b_hi, b_lo) = (b >> 64, b & MASK);
    let ll = a_lo * b_lo;
    let lh = a_lo * b_hi;
    let hl = a_hi * b_lo;
    let hh = a_hi * b_hi;
    let mid = (ll >> 64) + (lh & MASK) + (hl & MASK);
    let low = (ll & MASK) | (mid << 64);
    let high = hh + (lh >> 64) + (hl >> 64) + (mid >> 64);
    (high, low)
}

/// Montgomery arithmetic modulo an odd `n` with `R = 2^128`.
struct Mont {
    n: u128,
    n_neg_inv: u128,
    r2: u128,
}

impl Mont {
    fn new(n: u128) -> Self {
        debug_assert!(n & 1 == 1);
        // Newton iteration for n^-1 mod 2^128; each step doubles the precision.
        let mut inv: u128 = 1;
        for _ in 0..7 {
            inv = inv.wrapping_mul(2u128.wrapping_sub(n.wrapping_mul(inv)));
        }
        let r_mod = (u128::MAX % n + 1) % n;
        let r2 = mul_mod_slow(r_mod, r_mod, n);
        Mont {
            n,
            n_neg_inv: inv.wrapping_neg(),
            r2,
        }
    }

    fn reduce(&self, high: u128, low: u128) -> u128 {
        let u = low.wrapping_mul(self.n_neg_inv);
        let (s_high, s_low) = widening_mul(u, self.n);
        let (_, carry) = low.overflowing_add(s_low);
        let (t, o1) = high.overflowing_add(s_high);
        let (t, o2) = t.overflowing_add(carry as u128);
        if o1 || o2 || t >= self.n {
            t.wrapping_sub(self.n)
        } else {
            t
        }
    }

    fn mul(&self, a: u128, b: u128) -> u128 {
        let (h, l) = widening_mul(a, b);
        self.reduce(h, l)
    }

    fn enter(&self, a: u128) -> u128 {
        self.mul(a % self.n, self.r2)
    }

    fn leave(&self, a: u128) -> u128 {
        self.reduce(0, a)
    }

    fn pow(&self, mut base: u128, mut exp: u128) -> u128 {
        let mut result = self.enter(1);
        while exp > 0 {
            if exp & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        result
    }
}

/// A nontrivial divisor of the odd composite `n`.
fn find_divisor(n: u128, rng: &mut ChaCha8Rng) -> u128 {
    debug_assert!(n > 3 && !is_prime(n));
    if n.is_multiple_of(2) {
        return 2;
    }
    loop {
        let c = rng.gen_range(1..n);
        let x0 = rng.gen_range(0..n);
        let d = if n <= u64::MAX as u128 {
            brent(n, x0, |x| add_mod(x * x % n, c, n), |a, b| a * b % n)
        } else {
            // Montgomery form is a bijection mod n, so gcds are unaffected.
            let mont = Mont::new(n);
            let cm = mont.enter(c);
            brent(
                n,
                mont.enter(x0),
                |x| add_mod(mont.mul(x, x), cm, n),
                |a, b| mont.mul(a, b),
            )
        };
        if let Some(d) = d {
            return d;
        }
    }
}

/// Brent's cycle detection with batched gcds. `None` means the walk
/// collapsed onto `n` and the caller should retry with a fresh map.
fn brent(
    n: u128,
    x0: u128,
    step: impl Fn(u128) -> u128,
    mul: impl Fn(u128, u128) -> u128,
) -> Option<u128> {
    const BATCH: u64 = 128;
    let mut y = x0;
    let mut r: u64 = 1;
    let mut q: u128 = 1;
    let mut g: u128 = 1;
    let mut x = y;
    let mut ys = y;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = step(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..BATCH.min(r - k) {
                y = step(y);
                q = mul(q, x.abs_diff(y));
            }
            g = gcd(q, n);
            k += BATCH;
        }
        r *= 2;
        if r > 1 << 40 {
            return None;
        }
    }
    if g == n {
        loop {
            ys = step(ys);
            g = gcd(x.abs_diff(ys), n);
            if g > 1 {
                break;
            }
        }
    }
    if g == n {
        None
    } else {
        Some(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sieve(limit: usize) -> Vec<bool> {
        let mut s = vec![true; limit + 1];
        s[0] = false;
        if limit >= 1 {
            s[1] = false;
        }
        let mut i = 2;
        while i * i <= limit {
            if s[i] {
                let mut j = i * i;
                while j <= limit {
                    s[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        s
    }

    fn map(pairs: &[(u128, u32)]) -> BTreeMap<u128, u32> {
        pairs.iter().copied().collect()
    }

    #[test]
    fn factor_small_examples() {
        assert!(factor(1).unwrap().factors().is_empty());
        assert_eq!(factor(63).unwrap().factors(), &map(&[(3, 2), (7, 1)]));
        assert_eq!(
            factor(16_777_217).unwrap().factors(),
            &map(&[(97, 1), (257, 1), (673, 1)])
        );
        assert_eq!(factor(0), Err(NumError::Zero));
    }

    #[test]
    fn factor_agrees_with_sieve_up_to_a_million() {
        let s = sieve(1_000_000);
        for n in 1..=1_000_000u128 {
            let f = factor(n).unwrap();
            let mut product = 1u128;
            for (&p, &k) in f.factors() {
                assert!(s[p as usize], "{p} listed as factor of {n} is not prime");
                product *= p.pow(k);
            }
            assert_eq!(product, n);
        }
    }

    #[test]
    fn is_prime_matches_sieve() {
        let s = sieve(200_000);
        for n in 0..=200_000u128 {
            assert_eq!(is_prime(n), s[n as usize], "n = {n}");
        }
    }

    #[test]
    fn large_semiprimes_split() {
        // 2^61 - 1 and 2^31 - 1 are Mersenne primes.
        let p = (1u128 << 61) - 1;
        let q = (1u128 << 31) - 1;
        assert!(is_prime(p) && is_prime(q));
        let f = factor(p * q).unwrap();
        assert_eq!(f.factors(), &map(&[(q, 1), (p, 1)]));

        // 2^89 - 1 is prime, exercises the Montgomery path.
        let big = (1u128 << 89) - 1;
        assert!(is_prime(big));
        assert!(!is_prime(big * 3));
        let f = factor(big * 1_000_003).unwrap();
        assert_eq!(f.factors(), &map(&[(1_000_003, 1), (big, 1)]));
    }

    #[test]
    fn factor_two_power_minus_one_120() {
        let n = (1u128 << 120) - 1;
        let f = factor(n).unwrap();
        let mut product = 1u128;
        for (&p, &k) in f.factors() {
            assert!(is_prime(p));
            product *= p.pow(k);
        }
        assert_eq!(product, n);
    }

    #[test]
    fn factor_is_deterministic() {
        let n = (1u128 << 118) - 1;
        assert_eq!(factor(n).unwrap(), factor(n).unwrap());
    }

    #[test]
    fn prime_support_examples() {
        assert!(prime_support(1).unwrap().is_empty());
        assert_eq!(prime_support(65).unwrap(), vec![5, 13]);
        assert_eq!(prime_support(30).unwrap(), vec![2, 3, 5]);
        assert!(prime_support(0).is_err());
    }

    #[test]
    fn prime_power_part_examples() {
        assert_eq!(prime_power_part(8).unwrap(), Some((2, 3)));
        assert_eq!(prime_power_part(273).unwrap(), None);
        assert_eq!(prime_power_part(29).unwrap(), Some((29, 1)));
        assert_eq!(prime_power_part(1), Err(NumError::NotAboveOne(1)));
        assert_eq!(prime_power_part(0), Err(NumError::NotAboveOne(0)));
    }

    #[test]
    fn prime_power_iff_single_prime() {
        for n in 2..20_000u128 {
            assert_eq!(
                prime_power_part(n).unwrap().is_some(),
                prime_support(n).unwrap().len() == 1
            );
        }
    }

    #[test]
    fn zsigmondy_examples() {
        assert_eq!(zsigmondy(2, 6).unwrap(), None);
        assert_eq!(zsigmondy(3, 2).unwrap(), None);
        assert_eq!(zsigmondy(2, 12).unwrap(), Some(13));
        assert!(zsigmondy(1, 5).is_err());
        assert!(zsigmondy(5, 1).is_err());
        assert!(matches!(zsigmondy(10, 40), Err(NumError::Overflow(_))));
    }

    #[test]
    fn zsigmondy_non_mersenne_exception() {
        // 15 + 1 = 16: every prime of 15^2 - 1 = 224 = 2^5 * 7 already divides 14.
        assert_eq!(zsigmondy(15, 2).unwrap(), None);
        assert_eq!(zsigmondy(5, 2).unwrap(), Some(3));
    }

    #[test]
    fn ratio_check_examples() {
        let r = ratio_prime_power_check(6, 2).unwrap();
        assert_eq!(r.ratio.value(), 273);
        assert_eq!(r.ratio.factors(), &map(&[(3, 1), (7, 1), (13, 1)]));
        assert!(!r.is_prime_power);

        let r = ratio_prime_power_check(9, 3).unwrap();
        assert_eq!(r.ratio.value(), 4161);
        assert_eq!(r.ratio.factors(), &map(&[(3, 1), (19, 1), (73, 1)]));
        assert!(!r.is_prime_power);

        assert!(ratio_prime_power_check(6, 3).is_err());
        assert!(ratio_prime_power_check(3, 1).is_err());
        assert!(ratio_prime_power_check(8, 2).is_err());
        assert!(ratio_prime_power_check(7, 2).is_err());
        assert!(ratio_prime_power_check(6, 0).is_err());
    }

    #[test]
    fn display_and_json() {
        let f = factor(360).unwrap();
        assert_eq!(f.to_string(), "2^3*3^2*5");
        assert_eq!(factor(1).unwrap().to_string(), "1");
        let json = serde_json::to_string(&factor(63).unwrap()).unwrap();
        assert_eq!(json, r#"{"value":63,"factors":[[3,2],[7,1]]}"#);
    }

    #[test]
    fn pow_mod_paths_agree() {
        let m_odd = (1u128 << 100) + 7;
        let m_even = (1u128 << 100) + 8;
        for (b, e) in [(3u128, 1000u128), (12345678901234567890, 77)] {
            let slow = {
                let mut r = 1u128;
                for _ in 0..e {
                    r = mul_mod_slow(r, b, m_odd);
                }
                r
            };
            assert_eq!(pow_mod(b, e, m_odd), slow);
            let slow_even = {
                let mut r = 1u128;
                for _ in 0..e {
                    r = mul_mod_slow(r, b, m_even);
                }
                r
            };
            assert_eq!(pow_mod(b, e, m_even), slow_even);
        }
    }
}
