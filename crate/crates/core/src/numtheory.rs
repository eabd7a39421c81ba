//! Sums of squares over the integers and rationals.

use num_bigint::{BigInt, RandBigInt};
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::scalar::Rational;

const SMALL_PRIMES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Miller–Rabin; deterministic below `3.3·10^24`, probabilistic beyond.
pub fn is_probable_prime(n: &BigInt) -> bool {
    if n < &BigInt::from(2) {
        return false;
    }
    for p in SMALL_PRIMES {
        let p = BigInt::from(p);
        if n == &p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'witness: for a in SMALL_PRIMES {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// `(a, b)` with `a² + b² = p` for a prime `p ≡ 1 (mod 4)` or `p = 2`.
pub fn two_squares_prime(p: &BigInt, rng: &mut ChaCha8Rng) -> Option<(BigInt, BigInt)> {
    if p == &BigInt::from(2) {
        return Some((BigInt::one(), BigInt::one()));
    }
    let four = BigInt::from(4);
    if p.mod_floor(&four) != BigInt::one() {
        return None;
    }
    let e = (p - 1u32) / &four;
    let nm1 = p - 1u32;
    // Square root of −1 from a random non-residue.
    let root = loop {
        let t = rng.gen_bigint_range(&BigInt::from(2), &nm1);
        let r = t.modpow(&e, p);
        if (&r * &r) % p == nm1 {
            break r;
        }
    };
    // Cornacchia: Euclid on (p, root) until the remainder drops below √p.
    let (mut a, mut b) = (p.clone(), root);
    while &b * &b > *p {
        let r = &a % &b;
        a = b;
        b = r;
    }
    let rest = p - &b * &b;
    let c = rest.sqrt();
    (&c * &c == rest).then_some((b, c))
}

/// Four integers whose squares sum to `n ≥ 0`.
pub fn four_squares(n: &BigInt) -> [BigInt; 4] {
    assert!(!n.is_negative(), "four_squares of a negative number");
    if n.is_zero() {
        return [BigInt::zero(), BigInt::zero(), BigInt::zero(), BigInt::zero()];
    }
    // Strip factors of four.
    let four = BigInt::from(4);
    if (n % &four).is_zero() {
        return four_squares(&(n / &four)).map(|x| x * 2);
    }
    if let Some(small) = n.to_u64().filter(|&v| v < 1 << 16) {
        return small_four_squares(small).map(BigInt::from);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(n.to_u64_digits().1.first().copied().unwrap_or(0));
    let root = n.sqrt();
    let target = match n.mod_floor(&four).to_u32().expect("small") {
        1 => 0u32,
        2 => 1,
        _ => 2,
    };
    // Rabin–Shallit: pick a, b so that n − a² − b² is a prime ≡ 1 (mod 4).
    loop {
        let a = rng.gen_bigint_range(&BigInt::zero(), &(&root + 1u32));
        let b = rng.gen_bigint_range(&BigInt::zero(), &(&root + 1u32));
        let ab = &a * &a + &b * &b;
        if ab.mod_floor(&four) != BigInt::from(target) || ab > *n {
            continue;
        }
        let m = n - &ab;
        if m.is_one() {
            return [a, b, BigInt::one(), BigInt::zero()];
        }
        if is_probable_prime(&m) {
            if let Some((c, d)) = two_squares_prime(&m, &mut rng) {
                return [a, b, c, d];
            }
        }
    }
}

fn small_four_squares(n: u64) -> [u64; 4] {
    let r = n.sqrt();
    for a in 0..=r {
        for b in a..=r {
            let ab = a * a + b * b;
            if ab > n {
                break;
            }
            for c in b..=r {
                let abc = ab + c * c;
                if abc > n {
                    break;
                }
                let d = (n - abc).sqrt();
                if d * d == n - abc {
                    return [a, b, c, d];
                }
            }
        }
    }
    unreachable!("Lagrange's theorem")
}

/// Rationals `q_k` with `Σ q_k² = r` for a rational `r ≥ 0`, zeros omitted.
pub fn rational_squares(r: &Rational) -> Vec<Rational> {
    assert!(!r.is_negative(), "sum of squares of a negative rational");
    let (p, q) = (r.numer(), r.denom());
    // r = p·q / q²
    four_squares(&(p * q))
        .into_iter()
        .filter(|x| !x.is_zero())
        .map(|x| Rational::new(x, q.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(n: &BigInt) {
        let s = four_squares(n);
        let total: BigInt = s.iter().map(|x| x * x).sum();
        assert_eq!(&total, n);
    }

    #[test]
    fn primes() {
        let known = [2u64, 3, 97, 7919, 1_000_000_007];
        assert!(known.iter().all(|&p| is_probable_prime(&BigInt::from(p))));
        assert!(!is_probable_prime(&BigInt::from(561u32)));
        assert!(!is_probable_prime(&BigInt::from(1_000_000_007u64 * 3)));
    }

    #[test]
    fn four_squares_small_and_large() {
        for n in 0..300u32 {
            check(&BigInt::from(n));
        }
        for n in ["123456789012345678901234567", "340282366920938463463374607431768211455", "1000000000000000000000000000000"] {
            check(&n.parse().unwrap());
        }
    }

    #[test]
    fn rational() {
        let r = Rational::new(7.into(), 3.into());
        let s: Rational = rational_squares(&r).iter().map(|x| x * x).sum();
        assert_eq!(s, r);
    }
}
