//! Roots of univariate polynomials in the base field.
//!
//! Polynomials are coefficient vectors, constant term first.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::{Elem, FieldSpec};

/// Distinct roots lying in the field. Over the rationals, candidates whose
/// numerator or denominator would need factoring integers beyond `2^48` are
/// skipped, so the result may be incomplete there.
pub fn roots(field: FieldSpec, poly: &[Elem]) -> Vec<Elem> {
    let mut p: Vec<Elem> = poly.to_vec();
    while p.last().is_some_and(|c| field.is_zero(c)) {
        p.pop();
    }
    if p.len() <= 1 {
        return vec![];
    }
    match field {
        FieldSpec::Prime { p: m } => {
            let coeffs: Vec<u64> = p
                .iter()
                .map(|e| match e {
                    Elem::Mod(v) => *v as u64,
                    Elem::Rat(_) => panic!("rational coefficient over F_p"),
                })
                .collect();
            fp_roots(&coeffs, m as u64).into_iter().map(|r| Elem::Mod(r as u32)).collect()
        }
        FieldSpec::Rational => {
            let qs: Vec<BigRational> = p
                .iter()
                .map(|e| match e {
                    Elem::Rat(q) => q.clone(),
                    Elem::Mod(_) => panic!("F_p coefficient over Q"),
                })
                .collect();
            q_roots(&qs).into_iter().map(Elem::Rat).collect()
        }
    }
}

/// Evaluates a polynomial at `x`.
pub fn eval(field: FieldSpec, poly: &[Elem], x: &Elem) -> Elem {
    let mut acc = field.zero();
    for c in poly.iter().rev() {
        acc = field.add(&field.mul(&acc, x), c);
    }
    acc
}

fn fp_eval(f: &[u64], x: u64, p: u64) -> u64 {
    f.iter().rev().fold(0, |acc, c| (acc * x + c) % p)
}

fn fp_roots(f: &[u64], p: u64) -> Vec<u64> {
    if p < (1 << 16) {
        return (0..p).filter(|&x| fp_eval(f, x, p) == 0).collect();
    }
    let f = monic(f.to_vec(), p);
    // g = gcd(f, x^p - x) is the product of the distinct linear factors
    let xp = pow_x_mod(p, &f, p);
    let mut h = xp;
    h.resize(h.len().max(2), 0);
    h[1] = (h[1] + p - 1) % p;
    trim(&mut h);
    let g = gcd(f, h, p);
    let mut out = Vec::new();
    split(g, p, &mut out, 1);
    out.sort_unstable();
    out
}

fn split(g: Vec<u64>, p: u64, out: &mut Vec<u64>, mut a: u64) {
    let deg = g.len().saturating_sub(1);
    if deg == 0 {
        return;
    }
    if deg == 1 {
        // x + c, root -c
        out.push((p - g[0]) % p);
        return;
    }
    loop {
        // gcd((x + a)^((p-1)/2) - 1, g)
        let mut r = pow_lin_mod(a, (p - 1) / 2, &g, p);
        if r.is_empty() {
            r.push(0);
        }
        r[0] = (r[0] + p - 1) % p;
        trim(&mut r);
        let d = gcd(g.clone(), r, p);
        let dd = d.len().saturating_sub(1);
        a += 1;
        if dd > 0 && dd < deg {
            let (q, _) = divmod(&g, &d, p);
            split(d, p, out, a);
            split(q, p, out, a);
            return;
        }
    }
}

fn trim(f: &mut Vec<u64>) {
    while f.last() == Some(&0) {
        f.pop();
    }
}

fn inv(a: u64, p: u64) -> u64 {
    super::field::inv_mod(a, p)
}

fn monic(mut f: Vec<u64>, p: u64) -> Vec<u64> {
    trim(&mut f);
    if let Some(&lc) = f.last() {
        let i = inv(lc, p);
        for c in f.iter_mut() {
            *c = *c * i % p;
        }
    }
    f
}

fn divmod(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (vec![], r);
    }
    let li = inv(b[db], p);
    let mut q = vec![0; r.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db] * li % p;
        q[i] = c;
        if c == 0 {
            continue;
        }
        for j in 0..=db {
            r[i + j] = (r[i + j] + p - c * b[j] % p) % p;
        }
    }
    trim(&mut r);
    (q, r)
}

fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    divmod(&out, m, p).1
}

fn powmod(base: Vec<u64>, mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = divmod(&[1], m, p).1;
    let mut b = divmod(&base, m, p).1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(&acc, &b, m, p);
        }
        e >>= 1;
        if e > 0 {
            b = mulmod(&b, &b, m, p);
        }
    }
    acc
}

fn pow_x_mod(e: u64, m: &[u64], p: u64) -> Vec<u64> {
    powmod(vec![0, 1], e, m, p)
}

fn pow_lin_mod(a: u64, e: u64, m: &[u64], p: u64) -> Vec<u64> {
    powmod(vec![a % p, 1], e, m, p)
}

fn gcd(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = divmod(&a, &b, p).1;
        a = b;
        b = r;
    }
    monic(a, p)
}

const FACTOR_LIMIT: u64 = 1 << 48;

fn divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.abs().to_u64()?;
    if n == 0 || n > FACTOR_LIMIT {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

fn q_roots(f: &[BigRational]) -> Vec<BigRational> {
    // clear denominators
    let l = f.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let mut ints: Vec<BigInt> = f.iter().map(|q| (q * BigRational::from_integer(l.clone())).to_integer()).collect();
    let mut out = Vec::new();
    // factor out x^k
    let k = ints.iter().take_while(|c| c.is_zero()).count();
    if k > 0 {
        out.push(BigRational::zero());
        ints.drain(..k);
    }
    if ints.len() <= 1 {
        return out;
    }
    let (Some(ps), Some(qs)) = (divisors(&ints[0]), divisors(ints.last().unwrap())) else {
        return out;
    };
    let fq: Vec<BigRational> = ints.iter().map(|c| BigRational::from_integer(c.clone())).collect();
    let ev = |x: &BigRational| fq.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c);
    let mut seen = std::collections::BTreeSet::new();
    for &a in &ps {
        for &b in &qs {
            for s in [1i64, -1] {
                let x = BigRational::new(BigInt::from(a) * s, BigInt::from(b));
                if seen.insert(x.clone()) && ev(&x).is_zero() {
                    out.push(x);
                }
            }
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn elems(f: FieldSpec, v: &[i64]) -> Vec<Elem> {
        v.iter().map(|&x| f.from_i64(x)).collect()
    }

    #[test]
    fn small_prime_roots() {
        let f = FieldSpec::prime(101).unwrap();
        // (x - 3)(x - 5) = x^2 - 8x + 15
        let r = roots(f, &elems(f, &[15, -8, 1]));
        assert_eq!(r, elems(f, &[3, 5]));
        // x^2 + 1 has roots iff -1 is a square; 101 ≡ 1 mod 4 so it does: 10^2 = 100
        let r = roots(f, &elems(f, &[1, 0, 1]));
        assert_eq!(r, elems(f, &[10, 91]));
    }

    #[test]
    fn large_prime_roots_match_evaluation() {
        let p = 2_147_483_647u32;
        let f = FieldSpec::prime(p).unwrap();
        // (x - 7)(x - 123456)(x^2 + 1) ; 2^31-1 ≡ 3 mod 4 so x^2+1 is irreducible
        let mut poly = vec![1u64];
        for lin in [[p as u64 - 7, 1], [p as u64 - 123456, 1]] {
            poly = mul_plain(&poly, &lin, p as u64);
        }
        poly = mul_plain(&poly, &[1, 0, 1], p as u64);
        let e: Vec<Elem> = poly.iter().map(|&c| Elem::Mod(c as u32)).collect();
        let r = roots(f, &e);
        assert_eq!(r, vec![Elem::Mod(7), Elem::Mod(123456)]);
        for x in &r {
            assert!(f.is_zero(&eval(f, &e, x)));
        }
    }

    fn mul_plain(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        out
    }

    #[test]
    fn rational_roots() {
        let q = FieldSpec::Rational;
        // 2x^3 - x^2 - 2x + 1 = (2x - 1)(x - 1)(x + 1); times x
        let r = roots(q, &elems(q, &[0, 1, -2, -1, 2]));
        let shown: Vec<String> = r.iter().map(|e| e.to_string()).collect();
        assert_eq!(shown, vec!["-1", "0", "1/2", "1"]);
        assert!(roots(q, &elems(q, &[-2, 0, 1])).is_empty());
    }
}
