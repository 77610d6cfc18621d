//! Dense univariate polynomials over a prime field, stored low degree first.
//!
//! Only what the extension-field machinery needs: products, remainders,
//! gcds and modular exponentiation. Vectors are kept trimmed (no trailing
//! zeros); the zero polynomial is the empty vector.

pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powmod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> Option<u64> {
    if a % p == 0 {
        None
    } else {
        Some(powmod(a, p - 2, p))
    }
}

pub(crate) fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, slot) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *slot = (x + p - y) % p;
    }
    trim(&mut out);
    out
}

/// Remainder of `a` modulo a nonzero `m`.
pub(crate) fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p).expect("nonzero leading coefficient");
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = mulmod(*r.last().unwrap(), lead_inv, p);
        for (i, &mc) in m.iter().enumerate() {
            let idx = shift + i;
            r[idx] = (r[idx] + p - mulmod(c, mc, p)) % p;
        }
        trim(&mut r);
    }
    r
}

pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    if let Some(&lead) = x.last() {
        let li = inv_mod(lead, p).unwrap();
        for c in x.iter_mut() {
            *c = mulmod(*c, li, p);
        }
    }
    x
}

/// `base^exp mod m`, exponent given as a u128 so that `p^e` fits.
pub(crate) fn pow_rem(base: &[u64], mut exp: u128, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = rem(&[1], m, p);
    let mut b = rem(base, m, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = rem(&mul(&acc, &b, p), m, p);
        }
        b = rem(&mul(&b, &b, p), m, p);
        exp >>= 1;
    }
    acc
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            out.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's irreducibility test for a monic `g` of degree `e` over F_p.
pub(crate) fn is_irreducible(g: &[u64], p: u64) -> bool {
    let e = g.len() - 1;
    if e == 0 {
        return false;
    }
    if e == 1 {
        return true;
    }
    let x = [0u64, 1];
    let pe = (p as u128).pow(e as u32);
    if sub(&pow_rem(&x, pe, g, p), &rem(&x, g, p), p) != Vec::<u64>::new() {
        return false;
    }
    for q in prime_divisors(e) {
        let pk = (p as u128).pow((e / q) as u32);
        let h = sub(&pow_rem(&x, pk, g, p), &x, p);
        if gcd(&h, g, p).len() != 1 {
            return false;
        }
    }
    true
}

/// Lexicographically smallest monic irreducible polynomial of degree `e`
/// over F_p, comparing coefficient tuples from degree e-1 down to 0.
pub(crate) fn smallest_irreducible(p: u64, e: usize) -> Vec<u64> {
    let total = (p as u128).pow(e as u32);
    for idx in 0..total {
        // digits of idx, most significant first, are c_{e-1}, ..., c_0
        let mut g = vec![0u64; e + 1];
        g[e] = 1;
        let mut rest = idx;
        for k in 0..e {
            g[k] = (rest % p as u128) as u64;
            rest /= p as u128;
        }
        if g[0] == 0 && e > 1 {
            continue;
        }
        if is_irreducible(&g, p) {
            return g;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut q = 2u64;
    while q * q <= n {
        if n % q == 0 {
            return false;
        }
        q += 1;
    }
    true
}
