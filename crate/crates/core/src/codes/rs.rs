//! Shortened Reed-Solomon code over GF(2^8) with generator
//! `g(X) = (X - a)(X - a^2)...(X - a^(2 delta))`.
//!
//! Symbol order: a codeword is `msg[0..k] || parity[0..2 delta]`, and symbol
//! `j` is the coefficient of `X^(n1 - 1 - j)`. The first symbol is therefore
//! the leading coefficient and the message occupies the high-degree part of
//! `msg(X) * X^(2 delta) + parity(X)`.
//!
//! Decoding runs syndromes, a branch-free Berlekamp-Massey, an exhaustive
//! root search over all 255 nonzero field elements and a Forney magnitude
//! solve. Past delta errors the output is some message; no failure is
//! signalled.

use crate::costmodel::probe;
use crate::gf256::{alpha_pow, gf_mul, inverse_or_zero, mul_table, GfElem, ORDER};

/// Received or encoded word in transmission order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RsCodeword {
    pub symbols: Vec<GfElem>,
}

impl RsCodeword {
    pub fn from_bytes(bytes: &[u8]) -> Self {
        RsCodeword { symbols: bytes.iter().copied().map(GfElem).collect() }
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        self.symbols.iter().map(|s| s.0).collect()
    }

    /// Coefficient of `X^deg` of the codeword polynomial.
    pub fn coefficient(&self, deg: usize) -> GfElem {
        self.symbols[self.symbols.len() - 1 - deg]
    }
}

#[inline]
fn select(mask: u8, a: GfElem, b: GfElem) -> GfElem {
    GfElem((a.0 & mask) | (b.0 & !mask))
}

#[inline]
fn nonzero_mask(x: GfElem) -> u8 {
    // 0xFF when x != 0
    0u8.wrapping_sub(((u16::from(x.0) + 0xFF) >> 8) as u8)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReedSolomon {
    n1: usize,
    k: usize,
    delta: usize,
    /// Generator coefficients by degree; monic of degree 2 delta.
    generator: Vec<GfElem>,
}

impl ReedSolomon {
    pub fn new(n1: usize, k: usize, delta: usize) -> Self {
        assert!(k < n1 && n1 - k == 2 * delta && n1 <= ORDER);
        // public constants: built with the table multiplier
        let mut g = vec![GfElem::ONE];
        for i in 1..=2 * delta {
            let root = alpha_pow(i);
            let mut next = vec![GfElem::ZERO; g.len() + 1];
            for (d, &c) in g.iter().enumerate() {
                next[d + 1] += c;
                next[d] += mul_table(c, root);
            }
            g = next;
        }
        ReedSolomon { n1, k, delta, generator: g }
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn generator(&self) -> &[GfElem] {
        &self.generator
    }

    fn parity_len(&self) -> usize {
        2 * self.delta
    }

    /// Systematic encoding through a division shift register.
    pub fn encode(&self, msg: &[u8]) -> RsCodeword {
        assert_eq!(msg.len(), self.k, "message length");
        let p = self.parity_len();
        let g = &self.generator;
        // rem[t] is the coefficient of X^(p - 1 - t)
        let mut rem = vec![GfElem::ZERO; p];
        for &m in msg {
            let fb = GfElem(m) + rem[0];
            for t in 0..p - 1 {
                rem[t] = rem[t + 1] + gf_mul(fb, g[p - 1 - t]);
            }
            rem[p - 1] = gf_mul(fb, g[0]);
        }
        let mut symbols = Vec::with_capacity(self.n1);
        symbols.extend(msg.iter().copied().map(GfElem));
        symbols.extend(rem);
        probe::record(|c| c.rs_encodes += 1);
        RsCodeword { symbols }
    }

    /// `S_i = r(alpha^i)` for `i = 1..=2 delta`.
    pub fn syndromes(&self, word: &RsCodeword) -> Vec<GfElem> {
        assert_eq!(word.symbols.len(), self.n1, "codeword length");
        (1..=self.parity_len())
            .map(|i| {
                (0..self.n1).fold(GfElem::ZERO, |acc, deg| {
                    acc + gf_mul(word.coefficient(deg), alpha_pow(i * deg))
                })
            })
            .collect()
    }

    /// Error-locator polynomial by Berlekamp-Massey with a fixed iteration
    /// count and masked updates. Coefficients by degree, length 2 delta + 1.
    fn error_locator(&self, syndromes: &[GfElem]) -> Vec<GfElem> {
        let p = self.parity_len();
        let len = p + 1;
        let mut c = vec![GfElem::ZERO; len];
        let mut b = vec![GfElem::ZERO; len];
        c[0] = GfElem::ONE;
        b[0] = GfElem::ONE;
        let mut l: usize = 0;
        let mut b_scale = GfElem::ONE;
        for r in 0..p {
            let mut d = GfElem::ZERO;
            for i in 0..=r.min(p) {
                d += gf_mul(c[i], syndromes[r - i]);
            }
            // b <- X * b
            for i in (1..len).rev() {
                b[i] = b[i - 1];
            }
            b[0] = GfElem::ZERO;

            let factor = gf_mul(d, inverse_or_zero(b_scale));
            let d_nz = nonzero_mask(d);
            // 0xFF when 2l <= r
            let grow = 0u8.wrapping_sub(u8::from(2 * l <= r)) & d_nz;
            for i in 0..len {
                let updated = c[i] + gf_mul(factor, b[i]);
                b[i] = select(grow, c[i], b[i]);
                c[i] = updated;
            }
            let new_l = r + 1 - l;
            let grow_usize = usize::from(grow & 1);
            l = grow_usize * new_l + (1 - grow_usize) * l;
            b_scale = select(grow, d, b_scale);
        }
        c
    }

    /// Corrects up to delta symbol errors and returns the message part.
    // every field point is evaluated, so the loop index is not just a slice position
    #[allow(clippy::needless_range_loop)]
    pub fn decode(&self, received: &RsCodeword) -> Vec<u8> {
        assert_eq!(received.symbols.len(), self.n1, "codeword length");
        probe::record(|c| c.rs_decodes += 1);
        let p = self.parity_len();
        let syn = self.syndromes(received);
        let lambda = self.error_locator(&syn);
        let lambda = &lambda[..=self.delta];

        // Omega = S * Lambda mod X^(2 delta)
        let mut omega = vec![GfElem::ZERO; p];
        for (i, &s) in syn.iter().enumerate() {
            for (j, &l) in lambda.iter().enumerate() {
                if i + j < p {
                    omega[i + j] += gf_mul(s, l);
                }
            }
        }

        let mut corrected: Vec<GfElem> = (0..self.n1).map(|deg| received.coefficient(deg)).collect();
        for exp in 0..ORDER {
            // candidate root alpha^(-exp) locates degree `exp`
            let inv_exp = (ORDER - exp) % ORDER;
            let mut value = GfElem::ZERO;
            let mut derivative = GfElem::ZERO;
            for (j, &l) in lambda.iter().enumerate() {
                value += gf_mul(l, alpha_pow(inv_exp * j));
                if j % 2 == 1 {
                    derivative += gf_mul(l, alpha_pow(inv_exp * (j - 1)));
                }
            }
            if exp >= self.n1 {
                continue;
            }
            let mut num = GfElem::ZERO;
            for (i, &o) in omega.iter().enumerate() {
                num += gf_mul(o, alpha_pow(inv_exp * i));
            }
            let magnitude = gf_mul(num, inverse_or_zero(derivative));
            let is_root = !nonzero_mask(value);
            corrected[exp] += select(is_root, magnitude, GfElem::ZERO);
        }
        (0..self.k).map(|i| corrected[self.n1 - 1 - i].0).collect()
    }
}
