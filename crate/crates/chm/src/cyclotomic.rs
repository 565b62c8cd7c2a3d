//! Exact zero tests for sums of roots of unity.
//!
//! A sum of N-th roots of unity with integer multiplicities is written as a
//! polynomial in `Z[x]/(x^N - 1)`; it vanishes as a complex number exactly
//! when the N-th cyclotomic polynomial divides it. Division stays in `Z[x]`
//! because cyclotomic polynomials are monic.

use std::collections::HashMap;
use std::sync::Mutex;
use std::sync::OnceLock;

use num_integer::Integer;
use num_rational::Rational64;

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

/// Quotient of `num / den` for monic `den`, asserting exact division.
fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    assert!(*den.last().unwrap() == 1, "divisor must be monic");
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qn = rem.len() - 1 - dn;
    let mut quot = vec![0i64; qn + 1];
    for k in (0..=qn).rev() {
        let c = rem[k + dn];
        quot[k] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[k + j] = rem[k + j].checked_sub(c.checked_mul(dj).expect("overflow")).expect("overflow");
            }
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "division was not exact");
    quot
}

/// Coefficients of the n-th cyclotomic polynomial, ascending degree.
pub fn cyclotomic_poly(n: u64) -> Vec<i64> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<i64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    let result = if n == 1 {
        vec![-1, 1]
    } else {
        // (x^n - 1) / prod of cyclotomic polynomials of proper divisors
        let mut num = vec![0i64; n as usize + 1];
        num[0] = -1;
        num[n as usize] = 1;
        let mut quot = num;
        for d in divisors(n) {
            if d < n {
                quot = poly_div_exact(&quot, &cyclotomic_poly(d));
            }
        }
        quot
    };
    cache.lock().unwrap().insert(n, result.clone());
    result
}

/// Remainder of `poly` modulo the monic polynomial `modulus`, in place.
fn poly_rem(poly: &mut Vec<i64>, modulus: &[i64]) {
    let dn = modulus.len() - 1;
    while poly.len() > dn {
        let c = poly.pop().unwrap();
        if c != 0 {
            let k = poly.len() - dn;
            for (j, &mj) in modulus[..dn].iter().enumerate() {
                poly[k + j] = poly[k + j].checked_sub(c.checked_mul(mj).expect("overflow")).expect("overflow");
            }
        }
    }
}

/// Exact test of whether `Σ e^{2πi·t}` over the given turns equals zero.
pub fn turns_sum_is_zero(turns: &[Rational64]) -> bool {
    if turns.is_empty() {
        return true;
    }
    let mut order: u64 = 1;
    for t in turns {
        order = order.lcm(&(*t.denom() as u64));
    }
    let mut coeffs = vec![0i64; order as usize];
    for t in turns {
        let e = (*t.numer() as u64 * (order / *t.denom() as u64)) % order;
        coeffs[e as usize] += 1;
    }
    exponent_counts_sum_is_zero(&coeffs)
}

/// Exact zero test for `Σ coeffs[e]·ζ_N^e` with `N = coeffs.len()`.
pub fn exponent_counts_sum_is_zero(coeffs: &[i64]) -> bool {
    let order = coeffs.len() as u64;
    if order == 1 {
        return coeffs[0] == 0;
    }
    let phi = cyclotomic_poly(order);
    let mut poly = coeffs.to_vec();
    while poly.len() > 1 && *poly.last().unwrap() == 0 {
        poly.pop();
    }
    poly_rem(&mut poly, &phi);
    poly.iter().all(|&c| c == 0)
}
