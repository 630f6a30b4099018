use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::label::{HarmonicLabel, SphereLabel};
use crate::error::{Error, Result};
use crate::graded::{Parity, C64, ONE, ZERO};
use crate::osp::{build_irrep, Irrep};

#[derive(Serialize, Deserialize)]
struct ElementJson<L> {
    q: u32,
    coeffs: Vec<(L, [f64; 2])>,
}

/// Coefficients of an element of the truncated algebra with respect to the harmonic basis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ElementJson<HarmonicLabel>", into = "ElementJson<HarmonicLabel>")]
pub struct FuzzyElement {
    pub q: u32,
    coeffs: BTreeMap<HarmonicLabel, C64>,
}

impl TryFrom<ElementJson<HarmonicLabel>> for FuzzyElement {
    type Error = Error;
    fn try_from(j: ElementJson<HarmonicLabel>) -> Result<Self> {
        let mut e = FuzzyElement::zero(j.q);
        for (label, [re, im]) in j.coeffs {
            e.add_term(label, C64::new(re, im))?;
        }
        Ok(e)
    }
}

impl From<FuzzyElement> for ElementJson<HarmonicLabel> {
    fn from(e: FuzzyElement) -> Self {
        ElementJson { q: e.q, coeffs: e.coeffs.into_iter().map(|(l, z)| (l, [z.re, z.im])).collect() }
    }
}

impl FuzzyElement {
    pub fn zero(q: u32) -> Self {
        Self { q, coeffs: BTreeMap::new() }
    }

    pub fn unit(q: u32) -> Self {
        Self::basis(q, HarmonicLabel::highest(0))
    }

    pub fn basis(q: u32, label: HarmonicLabel) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(label, ONE);
        Self { q, coeffs }
    }

    /// Random coefficients in the unit square for every label with `j ≤ max_j2/2`.
    pub fn random<R: Rng>(q: u32, max_j2: u32, parity: Option<Parity>, rng: &mut R) -> Self {
        let mut e = Self::zero(q);
        for label in HarmonicLabel::all_up_to(q) {
            if label.j2 > max_j2 || parity.is_some_and(|p| p != label.parity()) {
                continue;
            }
            let z = C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            e.coeffs.insert(label, z);
        }
        e
    }

    pub fn add_term(&mut self, label: HarmonicLabel, c: C64) -> Result<()> {
        if label.j2 > 2 * self.q {
            return Err(Error::Truncation { j2: label.j2, q: self.q });
        }
        *self.coeffs.entry(label).or_insert(ZERO) += c;
        Ok(())
    }

    pub fn get(&self, label: &HarmonicLabel) -> C64 {
        self.coeffs.get(label).copied().unwrap_or(ZERO)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&HarmonicLabel, &C64)> {
        self.coeffs.iter()
    }

    pub fn max_j2(&self) -> u32 {
        self.coeffs.keys().map(|l| l.j2).max().unwrap_or(0)
    }

    pub fn scale(&self, s: C64) -> Self {
        Self { q: self.q, coeffs: self.coeffs.iter().map(|(l, z)| (*l, z * s)).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.q = self.q.max(other.q);
        for (l, z) in &other.coeffs {
            out.add_term(*l, *z)?;
        }
        Ok(out)
    }

    /// Largest coefficient difference over the union of supports.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst: f64 = 0.0;
        for (l, z) in &self.coeffs {
            worst = worst.max((z - other.get(l)).norm());
        }
        for (l, z) in &other.coeffs {
            if !self.coeffs.contains_key(l) {
                worst = worst.max(z.norm());
            }
        }
        worst
    }

    /// Drops coefficients with modulus at most `tol`.
    pub fn pruned(&self, tol: f64) -> Self {
        Self { q: self.q, coeffs: self.coeffs.iter().filter(|(_, z)| z.norm() > tol).map(|(l, z)| (*l, *z)).collect() }
    }

    /// Inclusion into a larger truncation level; coefficients are unchanged.
    pub fn embed(&self, q_to: u32) -> Result<Self> {
        if q_to < self.q {
            return Err(Error::Embedding { from: self.q, to: q_to });
        }
        Ok(Self { q: q_to, coeffs: self.coeffs.clone() })
    }

    /// Action of the osp(1|2) generator `a` on coefficients, each superspin block
    /// transforming as the irrep of that superspin.
    pub fn act(&self, a: usize) -> Self {
        let mut out = Self::zero(self.q);
        let mut reps: BTreeMap<u32, (Irrep, Vec<HarmonicLabel>)> = BTreeMap::new();
        for (label, z) in &self.coeffs {
            let (rep, block) = reps.entry(label.j2).or_insert_with(|| {
                let rep = build_irrep(label.j2, Parity::from_bit(label.j2));
                let block = block_order(&rep, label.j2);
                (rep, block)
            });
            let src = rep.index_of(label.mu == 0, label.m2 as i64).expect("valid label");
            let g = rep.generator(a);
            for (k, target) in block.iter().enumerate() {
                let c = g.matrix()[(k, src)];
                if c != ZERO {
                    *out.coeffs.entry(*target).or_insert(ZERO) += c * z;
                }
            }
        }
        out
    }
}

/// Labels of superspin `j2` listed in the basis order of its irrep.
fn block_order(rep: &Irrep, j2: u32) -> Vec<HarmonicLabel> {
    let mut out = vec![HarmonicLabel::highest(0); rep.dims.total()];
    for label in HarmonicLabel::block(j2) {
        out[rep.index_of(label.mu == 0, label.m2 as i64).unwrap()] = label;
    }
    out
}

/// Coefficients of an element of the truncated sphere with respect to its harmonic basis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ElementJson<SphereLabel>", into = "ElementJson<SphereLabel>")]
pub struct SphereElement {
    pub q: u32,
    coeffs: BTreeMap<SphereLabel, C64>,
}

impl TryFrom<ElementJson<SphereLabel>> for SphereElement {
    type Error = Error;
    fn try_from(j: ElementJson<SphereLabel>) -> Result<Self> {
        let mut e = SphereElement::zero(j.q);
        for (label, [re, im]) in j.coeffs {
            e.add_term(label, C64::new(re, im))?;
        }
        Ok(e)
    }
}

impl From<SphereElement> for ElementJson<SphereLabel> {
    fn from(e: SphereElement) -> Self {
        ElementJson { q: e.q, coeffs: e.coeffs.into_iter().map(|(l, z)| (l, [z.re, z.im])).collect() }
    }
}

impl SphereElement {
    pub fn zero(q: u32) -> Self {
        Self { q, coeffs: BTreeMap::new() }
    }

    pub fn add_term(&mut self, label: SphereLabel, c: C64) -> Result<()> {
        if label.j > self.q {
            return Err(Error::Truncation { j2: 2 * label.j, q: self.q });
        }
        *self.coeffs.entry(label).or_insert(ZERO) += c;
        Ok(())
    }

    pub fn get(&self, label: &SphereLabel) -> C64 {
        self.coeffs.get(label).copied().unwrap_or(ZERO)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&SphereLabel, &C64)> {
        self.coeffs.iter()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst: f64 = 0.0;
        for (l, z) in &self.coeffs {
            worst = worst.max((z - other.get(l)).norm());
        }
        for (l, z) in &other.coeffs {
            if !self.coeffs.contains_key(l) {
                worst = worst.max(z.norm());
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn json_round_trip() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let e = FuzzyElement::random(2, 4, None, &mut rng);
        let s = serde_json::to_string(&e).unwrap();
        let back: FuzzyElement = serde_json::from_str(&s).unwrap();
        assert_eq!(back, e);
        assert!(serde_json::from_str::<FuzzyElement>(r#"{"q":1,"coeffs":[[[4,4,0,0],[1.0,0.0]]]}"#).is_err());
    }

    #[test]
    fn embedding_composes() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        let e = FuzzyElement::random(2, 4, None, &mut rng);
        assert_eq!(e.embed(2).unwrap(), e);
        assert_eq!(e.embed(3).unwrap().embed(5).unwrap(), e.embed(5).unwrap());
        assert!(e.embed(1).is_err());
    }

    #[test]
    fn coefficient_action_is_a_representation() {
        use crate::osp::build_osp_basis;
        let basis = build_osp_basis();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        // J_a J_b e - (-1)^{|a||b|} J_b J_a e = Σ c^k_{ab} J_k e, checked on homogeneous parts of e
        for p in [Parity::Even, Parity::Odd] {
            let e = FuzzyElement::random(2, 4, Some(p), &mut rng);
            for a in 0..5 {
                for b in 0..5 {
                    let s = basis.parities[a].koszul(basis.parities[b]);
                    let lhs = e.act(b).act(a).add(&e.act(a).act(b).scale(C64::new(-s, 0.0))).unwrap();
                    let mut rhs = FuzzyElement::zero(2);
                    for k in 0..5 {
                        rhs = rhs.add(&e.act(k).scale(basis.consts[a][b][k])).unwrap();
                    }
                    assert!(lhs.max_abs_diff(&rhs) < 1e-12);
                }
            }
        }
    }
}
