//! Keccak-f[1600] and a byte-oriented sponge.

use crate::costmodel::probe;

pub const ROUNDS: usize = 24;

const ROUND_CONSTANTS: [u64; ROUNDS] = [
    0x0000_0000_0000_0001,
    0x0000_0000_0000_8082,
    0x8000_0000_0000_808A,
    0x8000_0000_8000_8000,
    0x0000_0000_0000_808B,
    0x0000_0000_8000_0001,
    0x8000_0000_8000_8081,
    0x8000_0000_0000_8009,
    0x0000_0000_0000_008A,
    0x0000_0000_0000_0088,
    0x0000_0000_8000_8009,
    0x0000_0000_8000_000A,
    0x0000_0000_8000_808B,
    0x8000_0000_0000_008B,
    0x8000_0000_0000_8089,
    0x8000_0000_0000_8003,
    0x8000_0000_0000_8002,
    0x8000_0000_0000_0080,
    0x0000_0000_0000_800A,
    0x8000_0000_8000_000A,
    0x8000_0000_8000_8081,
    0x8000_0000_0000_8080,
    0x0000_0000_8000_0001,
    0x8000_0000_8000_8008,
];

/// Rotation offsets indexed by lane `x + 5y`.
const RHO: [u32; 25] = [
    0, 1, 62, 28, 27, //
    36, 44, 6, 55, 20, //
    3, 10, 43, 25, 39, //
    41, 45, 15, 21, 8, //
    18, 2, 61, 56, 14,
];

/// 25 lanes of 64 bits; lane `x + 5y` holds column x, row y.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct KeccakState {
    pub lanes: [u64; 25],
}

impl KeccakState {
    pub fn permute(&mut self) {
        keccak_f1600(&mut self.lanes);
    }

    #[inline]
    fn xor_byte(&mut self, i: usize, b: u8) {
        self.lanes[i >> 3] ^= u64::from(b) << (8 * (i & 7));
    }

    #[inline]
    fn byte(&self, i: usize) -> u8 {
        (self.lanes[i >> 3] >> (8 * (i & 7))) as u8
    }
}

/// All 24 rounds (theta, rho, pi, chi, iota) in place.
pub fn keccak_f1600(a: &mut [u64; 25]) {
    probe::record(|c| c.keccak_permutations += 1);
    for rc in ROUND_CONSTANTS {
        // theta
        let mut col = [0u64; 5];
        for x in 0..5 {
            col[x] = a[x] ^ a[x + 5] ^ a[x + 10] ^ a[x + 15] ^ a[x + 20];
        }
        for x in 0..5 {
            let d = col[(x + 4) % 5] ^ col[(x + 1) % 5].rotate_left(1);
            for y in 0..5 {
                a[x + 5 * y] ^= d;
            }
        }
        // rho and pi: B[y, 2x + 3y] = rot(A[x, y])
        let mut b = [0u64; 25];
        for x in 0..5 {
            for y in 0..5 {
                let src = x + 5 * y;
                b[y + 5 * ((2 * x + 3 * y) % 5)] = a[src].rotate_left(RHO[src]);
            }
        }
        // chi
        for y in 0..5 {
            for x in 0..5 {
                a[x + 5 * y] = b[x + 5 * y] ^ (!b[(x + 1) % 5 + 5 * y] & b[(x + 2) % 5 + 5 * y]);
            }
        }
        // iota
        a[0] ^= rc;
    }
}

/// Sponge over Keccak-f[1600] with a fixed rate and padding suffix.
///
/// Absorbing is allowed until the first squeeze; the first squeeze pads and
/// switches the sponge to output mode for good.
#[derive(Debug, Clone)]
pub struct Sponge {
    state: KeccakState,
    rate: usize,
    suffix: u8,
    pos: usize,
    squeezing: bool,
}

impl Sponge {
    pub fn new(rate: usize, suffix: u8) -> Self {
        assert!(rate > 0 && rate < 200 && rate.is_multiple_of(8), "invalid sponge rate {rate}");
        Sponge { state: KeccakState::default(), rate, suffix, pos: 0, squeezing: false }
    }

    pub fn rate(&self) -> usize {
        self.rate
    }

    pub fn is_squeezing(&self) -> bool {
        self.squeezing
    }

    /// Current cursor inside the rate portion.
    pub fn position(&self) -> usize {
        self.pos
    }

    /// Returns `false` (and absorbs nothing) once squeezing has started.
    #[must_use]
    pub fn absorb(&mut self, data: &[u8]) -> bool {
        if self.squeezing {
            return false;
        }
        for &b in data {
            self.state.xor_byte(self.pos, b);
            self.pos += 1;
            if self.pos == self.rate {
                self.state.permute();
                self.pos = 0;
            }
        }
        probe::record(|c| c.keccak_absorbed_bytes += data.len() as u64);
        true
    }

    /// Pads and switches to output mode. Idempotent.
    pub fn finalize(&mut self) {
        if self.squeezing {
            return;
        }
        self.state.xor_byte(self.pos, self.suffix);
        self.state.xor_byte(self.rate - 1, 0x80);
        self.state.permute();
        self.pos = 0;
        self.squeezing = true;
    }

    pub fn squeeze(&mut self, out: &mut [u8]) {
        self.finalize();
        for o in out.iter_mut() {
            if self.pos == self.rate {
                self.state.permute();
                self.pos = 0;
            }
            *o = self.state.byte(self.pos);
            self.pos += 1;
        }
        probe::record(|c| c.keccak_squeezed_bytes += out.len() as u64);
    }
}
