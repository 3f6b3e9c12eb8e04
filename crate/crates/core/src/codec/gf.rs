//! Binary extension fields GF(2^w), 1 <= w <= 16, via log/antilog tables.

use std::sync::OnceLock;

pub const MAX_FIELD_WIDTH: u32 = 16;

/// Primitive polynomials, indexed by width; bit `w` is the leading term.
const PRIMITIVE_POLYS: [u32; 17] = [
    0, 0x3, 0x7, 0xB, 0x13, 0x25, 0x43, 0x89, 0x11D, 0x211, 0x409, 0x805, 0x1053, 0x201B, 0x4443, 0x8003, 0x1100B,
];

#[derive(Debug)]
pub struct GaloisField {
    width: u32,
    /// `exp[i] = alpha^i`, doubled so products of logs need no reduction.
    exp: Vec<u16>,
    log: Vec<u32>,
}

impl GaloisField {
    fn build(width: u32) -> Self {
        assert!(
            (1..=MAX_FIELD_WIDTH).contains(&width),
            "unsupported field width {width}"
        );
        let size = 1usize << width;
        let order = size - 1;
        let poly = PRIMITIVE_POLYS[width as usize];
        let mut exp = vec![0u16; 2 * order];
        let mut log = vec![0u32; size];
        let mut x: u32 = 1;
        for (i, e) in exp.iter_mut().take(order).enumerate() {
            *e = x as u16;
            log[x as usize] = i as u32;
            x <<= 1;
            if x & (1 << width) != 0 {
                x ^= poly;
            }
            // reaching 1 early means alpha is not primitive
            assert!(x != 1 || i == order - 1, "polynomial {poly:#x} is not primitive");
        }
        for i in order..2 * order {
            exp[i] = exp[i - order];
        }
        Self { width, exp, log }
    }

    /// Shared instance for `width`.
    pub fn get(width: u32) -> &'static GaloisField {
        static FIELDS: [OnceLock<GaloisField>; 17] = [const { OnceLock::new() }; 17];
        assert!(
            (1..=MAX_FIELD_WIDTH).contains(&width),
            "unsupported field width {width}"
        );
        FIELDS[width as usize].get_or_init(|| GaloisField::build(width))
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn size(&self) -> usize {
        1 << self.width
    }

    fn order(&self) -> usize {
        self.size() - 1
    }

    #[inline]
    pub fn add(&self, a: u16, b: u16) -> u16 {
        a ^ b
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }

    #[inline]
    pub fn inv(&self, a: u16) -> u16 {
        assert!(a != 0, "zero has no inverse");
        self.exp[(self.order() - self.log[a as usize] as usize) % self.order()]
    }

    #[inline]
    pub fn div(&self, a: u16, b: u16) -> u16 {
        self.mul(a, self.inv(b))
    }
}
