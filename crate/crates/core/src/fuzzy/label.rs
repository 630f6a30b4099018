use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graded::Parity;

/// Index `(j, l, m, μ)` of a superspherical harmonic, stored with doubled spins.
///
/// `l = j − μ/2` is implied; serialized as the integer tuple `[2j, 2l, 2m, μ]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HarmonicLabel {
    pub j2: u32,
    pub mu: u8,
    pub m2: i32,
}

impl HarmonicLabel {
    pub fn new(j2: u32, mu: u8, m2: i32) -> Result<Self> {
        let bad = || Error::InvalidLabel(format!("[{j2}, {}, {m2}, {mu}]", j2 as i64 - mu as i64));
        if mu > 1 || (mu == 1 && j2 == 0) {
            return Err(bad());
        }
        let l2 = (j2 - mu as u32) as i32;
        if m2.abs() > l2 || (l2 - m2) % 2 != 0 {
            return Err(bad());
        }
        Ok(Self { j2, mu, m2 })
    }

    /// Highest weight label `(j, j, j, 0)`.
    pub fn highest(j2: u32) -> Self {
        Self { j2, mu: 0, m2: j2 as i32 }
    }

    pub fn l2(&self) -> u32 {
        self.j2 - self.mu as u32
    }

    pub fn j(&self) -> f64 {
        self.j2 as f64 / 2.0
    }

    pub fn l(&self) -> f64 {
        self.l2() as f64 / 2.0
    }

    pub fn m(&self) -> f64 {
        self.m2 as f64 / 2.0
    }

    pub fn parity(&self) -> Parity {
        Parity::from_bit(self.j2 + self.mu as u32)
    }

    /// Diagonal entry of the Gram matrix: −1 for half-integer `j` with `μ = 1`, otherwise +1.
    pub fn norm_sign(&self) -> f64 {
        if self.j2 % 2 == 1 && self.mu == 1 {
            -1.0
        } else {
            1.0
        }
    }

    /// All labels with `j ≤ q`, ordered by `j`, then `μ`, then `m` descending.
    pub fn all_up_to(q: u32) -> Vec<HarmonicLabel> {
        let mut out = Vec::with_capacity(((2 * q + 1) * (2 * q + 1)) as usize);
        for j2 in 0..=2 * q {
            out.extend(Self::block(j2));
        }
        out
    }

    /// The `4j + 1` labels of superspin `j`.
    pub fn block(j2: u32) -> Vec<HarmonicLabel> {
        let mut out = Vec::new();
        for mu in 0..=1u8 {
            if mu == 1 && j2 == 0 {
                continue;
            }
            let l2 = (j2 - mu as u32) as i32;
            let mut m2 = l2;
            while m2 >= -l2 {
                out.push(HarmonicLabel { j2, mu, m2 });
                m2 -= 2;
            }
        }
        out
    }

    pub fn to_tuple(&self) -> [i64; 4] {
        [self.j2 as i64, self.l2() as i64, self.m2 as i64, self.mu as i64]
    }

    pub fn from_tuple(t: [i64; 4]) -> Result<Self> {
        let [j2, l2, m2, mu] = t;
        if j2 < 0 || !(0..=1).contains(&mu) || l2 != j2 - mu {
            return Err(Error::InvalidLabel(format!("{t:?}")));
        }
        Self::new(j2 as u32, mu as u8, m2 as i32)
    }
}

fn fmt_half(f: &mut fmt::Formatter<'_>, x2: i64) -> fmt::Result {
    if x2 % 2 == 0 {
        write!(f, "{}", x2 / 2)
    } else {
        write!(f, "{}/2", x2)
    }
}

impl fmt::Display for HarmonicLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        fmt_half(f, self.j2 as i64)?;
        write!(f, ",")?;
        fmt_half(f, self.l2() as i64)?;
        write!(f, ",")?;
        fmt_half(f, self.m2 as i64)?;
        write!(f, ",{})", self.mu)
    }
}

impl Serialize for HarmonicLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_tuple().serialize(s)
    }
}

impl<'de> Deserialize<'de> for HarmonicLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let t = <[i64; 4]>::deserialize(d)?;
        HarmonicLabel::from_tuple(t).map_err(serde::de::Error::custom)
    }
}

/// Index `(j, m)` of an ordinary spherical harmonic, `j` integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SphereLabel {
    pub j: u32,
    pub m: i32,
}

impl SphereLabel {
    pub fn new(j: u32, m: i32) -> Result<Self> {
        if m.unsigned_abs() > j {
            return Err(Error::InvalidLabel(format!("[{j}, {m}]")));
        }
        Ok(Self { j, m })
    }

    pub fn all_up_to(q: u32) -> Vec<SphereLabel> {
        let mut out = Vec::new();
        for j in 0..=q {
            for k in 0..=2 * j {
                out.push(SphereLabel { j, m: j as i32 - k as i32 });
            }
        }
        out
    }
}

impl fmt::Display for SphereLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.j, self.m)
    }
}
