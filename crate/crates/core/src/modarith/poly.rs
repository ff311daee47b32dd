//! Roots of polynomials of degree at most 3 over `F_N`.
//!
//! Coefficients are given highest degree first, so `x^2 + x - 1` is
//! `[1, 1, -1]`. Cubics are handled by Cantor–Zassenhaus: the distinct-root
//! part `gcd(f, x^N - x)` is split with `gcd(g, (x + a)^((N-1)/2) - 1)` for
//! `a = 0, 1, 2, …`, which keeps the output deterministic.

use super::{inv_mod, mul_mod, reduce_signed, sqrt_mod};
use crate::error::{Error, Result};

/// Below this modulus an exhaustive scan backs up the algebraic splitter.
pub const SCAN_FALLBACK_LIMIT: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRoots {
    /// Distinct roots in ascending order.
    pub roots: Vec<u64>,
    /// N divides the discriminant.
    pub repeated_root: bool,
}

/// Coefficients reduced mod n, low degree first, made monic.
fn monic_low_first(coeffs: &[i64], n: u64) -> Result<Vec<u64>> {
    let deg = coeffs.len().saturating_sub(1);
    if !(1..=3).contains(&deg) {
        return Err(Error::UnsupportedDegree(deg));
    }
    let lead = reduce_signed(coeffs[0], n);
    if lead == 0 {
        return Err(Error::DegenerateModulus(n));
    }
    let li = inv_mod(lead, n);
    Ok(coeffs
        .iter()
        .rev()
        .map(|&c| mul_mod(reduce_signed(c, n), li, n))
        .collect())
}

/// Discriminant of a monic polynomial (low degree first) mod n.
fn discriminant(f: &[u64], n: u64) -> u64 {
    let neg = |x: u64| (n - x) % n;
    let add = |a: u64, b: u64| ((a as u128 + b as u128) % n as u128) as u64;
    let sc = |k: u64, x: u64| mul_mod(k % n, x, n);
    match f.len() - 1 {
        1 => 1,
        2 => {
            // b^2 - 4c
            let (c, b) = (f[0], f[1]);
            add(mul_mod(b, b, n), neg(sc(4, c)))
        }
        3 => {
            // b^2c^2 - 4c^3 - 4b^3d - 27d^2 + 18bcd for x^3 + bx^2 + cx + d
            let (d, c, b) = (f[0], f[1], f[2]);
            let bb = mul_mod(b, b, n);
            let cc = mul_mod(c, c, n);
            let t1 = mul_mod(bb, cc, n);
            let t2 = sc(4, mul_mod(cc, c, n));
            let t3 = sc(4, mul_mod(mul_mod(bb, b, n), d, n));
            let t4 = sc(27, mul_mod(d, d, n));
            let t5 = sc(18, mul_mod(mul_mod(b, c, n), d, n));
            add(add(t1, t5), neg(add(add(t2, t3), t4)))
        }
        _ => unreachable!(),
    }
}

fn eval(f: &[u64], x: u64, n: u64) -> u64 {
    f.iter().rev().fold(0u64, |acc, &c| {
        ((mul_mod(acc, x, n) as u128 + c as u128) % n as u128) as u64
    })
}

/// All roots of `coeffs` in `F_N`, with multiplicity collapsed.
pub fn poly_roots_mod(coeffs: &[i64], n: u64) -> Result<PolyRoots> {
    let f = monic_low_first(coeffs, n)?;
    let repeated_root = discriminant(&f, n) == 0;
    let mut roots = match f.len() - 1 {
        1 => vec![(n - f[0]) % n],
        2 => quadratic_roots(&f, n),
        _ => {
            let found = cubic_roots(&f, n);
            match found {
                Some(r) => r,
                None if n < SCAN_FALLBACK_LIMIT => scan(&f, n),
                None => panic!("equal-degree splitting failed mod {n}"),
            }
        }
    };
    roots.sort_unstable();
    roots.dedup();
    Ok(PolyRoots {
        roots,
        repeated_root,
    })
}

/// Exhaustive O(N) evaluation; the oracle for [`poly_roots_mod`].
pub fn poly_roots_scan(coeffs: &[i64], n: u64) -> Result<PolyRoots> {
    let f = monic_low_first(coeffs, n)?;
    Ok(PolyRoots {
        roots: scan(&f, n),
        repeated_root: discriminant(&f, n) == 0,
    })
}

fn scan(f: &[u64], n: u64) -> Vec<u64> {
    (0..n).filter(|&x| eval(f, x, n) == 0).collect()
}

fn quadratic_roots(f: &[u64], n: u64) -> Vec<u64> {
    let b = f[1];
    if n == 2 {
        return scan(f, n);
    }
    let disc = discriminant(f, n);
    let Some(r) = sqrt_mod(disc, n) else {
        return Vec::new();
    };
    let half = inv_mod(2, n);
    let nb = (n - b) % n;
    vec![
        mul_mod((nb + r) % n, half, n),
        mul_mod(
            ((nb as u128 + n as u128 - r as u128) % n as u128) as u64,
            half,
            n,
        ),
    ]
}

// --- small dense polynomials over F_n, low degree first ---

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
    a
}

fn is_zero(a: &[u64]) -> bool {
    a.iter().all(|&c| c == 0)
}

fn sub(a: &[u64], b: &[u64], n: u64) -> Vec<u64> {
    let len = a.len().max(b.len());
    let out = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            ((x as u128 + n as u128 - y as u128) % n as u128) as u64
        })
        .collect();
    trim(out)
}

fn rem(a: &[u64], m: &[u64], n: u64) -> Vec<u64> {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], n);
    while r.len() > dm && !is_zero(&r) {
        let shift = r.len() - 1 - dm;
        let q = mul_mod(*r.last().unwrap(), lead_inv, n);
        for (i, &c) in m.iter().enumerate() {
            let t = mul_mod(q, c, n);
            r[shift + i] = ((r[shift + i] as u128 + n as u128 - t as u128) % n as u128) as u64;
        }
        r = trim(r);
    }
    r
}

fn mul_rem(a: &[u64], b: &[u64], m: &[u64], n: u64) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u128 + mul_mod(x, y, n) as u128) % n as u128) as u64;
        }
    }
    rem(&prod, m, n)
}

fn pow_rem(base: &[u64], mut e: u64, m: &[u64], n: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = rem(base, m, n);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_rem(&acc, &b, m, n);
        }
        b = mul_rem(&b, &b, m, n);
        e >>= 1;
    }
    acc
}

fn make_monic(a: Vec<u64>, n: u64) -> Vec<u64> {
    let li = inv_mod(*a.last().unwrap(), n);
    a.into_iter().map(|c| mul_mod(c, li, n)).collect()
}

fn gcd(a: &[u64], b: &[u64], n: u64) -> Vec<u64> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !is_zero(&b) {
        let r = rem(&a, &b, n);
        a = b;
        b = r;
    }
    make_monic(a, n)
}

fn cubic_roots(f: &[u64], n: u64) -> Option<Vec<u64>> {
    if n < 5 {
        return Some(scan(f, n));
    }
    // x^N mod f, then g = gcd(f, x^N - x) keeps exactly the distinct linear factors.
    let xn = pow_rem(&[0, 1], n, f, n);
    let g = gcd(f, &sub(&xn, &[0, 1], n), n);
    let mut out = Vec::new();
    split(g, n, &mut out)?;
    Some(out)
}

/// Splits a monic squarefree product of linear factors into its roots.
fn split(g: Vec<u64>, n: u64, out: &mut Vec<u64>) -> Option<()> {
    match g.len() - 1 {
        0 => return Some(()),
        1 => {
            out.push((n - g[0]) % n);
            return Some(());
        }
        _ => {}
    }
    let budget = n.min(10_000);
    for a in 0..budget {
        let h = pow_rem(&[a, 1], (n - 1) / 2, &g, n);
        let d = gcd(&g, &sub(&h, &[1], n), n);
        let dd = d.len() - 1;
        if dd > 0 && dd < g.len() - 1 {
            let (q, _) = divide(&g, &d, n);
            split(d, n, out)?;
            return split(q, n, out);
        }
    }
    None
}

fn divide(a: &[u64], b: &[u64], n: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], n);
    if r.len() <= db {
        return (vec![0], trim(r));
    }
    let mut q = vec![0u64; r.len() - db];
    for shift in (0..q.len()).rev() {
        let c = mul_mod(r[shift + db], lead_inv, n);
        q[shift] = c;
        for (i, &bc) in b.iter().enumerate() {
            let t = mul_mod(c, bc, n);
            r[shift + i] = ((r[shift + i] as u128 + n as u128 - t as u128) % n as u128) as u64;
        }
    }
    (trim(q), trim(r))
}
