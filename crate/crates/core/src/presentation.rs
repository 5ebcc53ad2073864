//! Words in the meridional generators `s_1, …, s_n` and the two group
//! presentations attached to a pretzel diagram.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::knot::PretzelKnot;
use crate::quat::{ImVector, Quaternion};

/// A generator (zero-based) or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub const fn gen(generator: usize) -> Self {
        Letter {
            generator,
            inverse: false,
        }
    }

    pub const fn inv(generator: usize) -> Self {
        Letter {
            generator,
            inverse: true,
        }
    }

    pub fn inverted(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }

    /// `+(g+1)` for `s_{g+1}`, `−(g+1)` for its inverse.
    pub fn signed_index(self) -> i64 {
        let i = self.generator as i64 + 1;
        if self.inverse {
            -i
        } else {
            i
        }
    }

    pub fn from_signed_index(i: i64) -> Option<Self> {
        match i {
            0 => None,
            i if i > 0 => Some(Letter::gen(i as usize - 1)),
            i => Some(Letter::inv((-i) as usize - 1)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverted()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pow(&self, e: i64) -> Word {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut v = Vec::with_capacity(base.len() * e.unsigned_abs() as usize);
        for _ in 0..e.unsigned_abs() {
            v.extend_from_slice(&base.0);
        }
        Word(v)
    }

    /// Cancels adjacent `x x⁻¹` pairs until none remain.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inverted()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Replaces every letter by a word; inverse letters get the inverse word.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut v = Vec::new();
        for l in &self.0 {
            let w = &images[l.generator];
            if l.inverse {
                v.extend(w.inverse().0);
            } else {
                v.extend_from_slice(&w.0);
            }
        }
        Word(v)
    }

    pub fn exponent_sums(&self, generators: usize) -> Vec<i64> {
        let mut sums = vec![0; generators];
        for l in &self.0 {
            sums[l.generator] += if l.inverse { -1 } else { 1 };
        }
        sums
    }

    pub fn to_signed(&self) -> Vec<i64> {
        self.0.iter().map(|l| l.signed_index()).collect()
    }

    pub fn from_signed(v: &[i64]) -> Option<Word> {
        v.iter()
            .map(|&i| Letter::from_signed_index(i))
            .collect::<Option<Vec<_>>>()
            .map(Word)
    }

    /// Evaluates the word with `s_i ↦ images[i]`.
    pub fn evaluate(&self, images: &[Quaternion]) -> Quaternion {
        self.0.iter().fold(Quaternion::ONE, |acc, l| {
            let q = images[l.generator];
            acc * if l.inverse { q.inverse() } else { q }
        })
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.generator).max()
    }
}

impl fmt::Display for Word {
    /// `s1 s2 s1^-1`; the empty word prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "s{}", l.generator + 1)?;
            if l.inverse {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_signed().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<i64>::deserialize(d)?;
        Word::from_signed(&v).ok_or_else(|| serde::de::Error::custom("zero is not a letter"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PresentationKind {
    /// The knot group from the tangle decomposition.
    KnotGroup,
    /// The quotient through which every traceless representation factors.
    QuotientGroup,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

impl Presentation {
    /// One relator per line.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in &self.relators {
            s.push_str(&r.to_string());
            s.push('\n');
        }
        s
    }

    /// Largest coefficient deviation of any relator from 1 under `images`.
    pub fn max_residual(&self, images: &[Quaternion]) -> f64 {
        self.relators
            .iter()
            .map(|r| r.evaluate(images).dist_inf(&Quaternion::ONE))
            .fold(0.0, f64::max)
    }

    pub fn max_residual_points(&self, points: &[ImVector]) -> f64 {
        let images: Vec<Quaternion> = points.iter().map(|z| z.as_quaternion()).collect();
        self.max_residual(&images)
    }
}

const S: usize = 0;
const T: usize = 1;

fn ts() -> Word {
    Word(vec![Letter::gen(T), Letter::gen(S)])
}

fn conj_by_ts(core: Word, k: i64) -> Word {
    // (ts)^{-k} core (ts)^{k}
    ts().pow(-k).concat(&core).concat(&ts().pow(k))
}

/// Bottom meridians `(u, v)` of an elementary `p`-tangle as words in its top
/// meridians `s` (generator 0) and `t` (generator 1).
pub fn tangle_words(p: i64) -> (Word, Word) {
    assert!(p != 0, "tangle parameter must be nonzero");
    let s = Word(vec![Letter::gen(S)]);
    let t = Word(vec![Letter::gen(T)]);
    let s_inv_t_s = Word(vec![Letter::inv(S), Letter::gen(T), Letter::gen(S)]);
    let t_s_t_inv = Word(vec![Letter::gen(T), Letter::gen(S), Letter::inv(T)]);
    let m = p.abs();
    let k = m / 2;
    match (p > 0, m % 2 == 1) {
        (true, true) => (conj_by_ts(s_inv_t_s, k), conj_by_ts(s, k)),
        (true, false) => (conj_by_ts(s, k), conj_by_ts(s_inv_t_s, k - 1)),
        (false, true) => (conj_by_ts(t, -k), conj_by_ts(t_s_t_inv, -k)),
        (false, false) => (conj_by_ts(t_s_t_inv, -(k - 1)), conj_by_ts(t, -k)),
    }
}

pub fn emit_presentation(k: &PretzelKnot, which: PresentationKind) -> Presentation {
    let p = k.params();
    let n = p.len();
    let generators = (1..=n).map(|i| format!("s{i}")).collect();
    let relators = match which {
        PresentationKind::KnotGroup => knot_group_relators(p),
        PresentationKind::QuotientGroup => quotient_relators(p),
    };
    Presentation {
        generators,
        relators,
    }
}

fn knot_group_relators(p: &[i64]) -> Vec<Word> {
    let n = p.len();
    // u_k, v_k in terms of s_k and t_k = s_{k+1}^{-1}
    let bottoms: Vec<(Word, Word)> = (0..n)
        .map(|i| {
            let images = [
                Word(vec![Letter::gen(i)]),
                Word(vec![Letter::inv((i + 1) % n)]),
            ];
            let (u, v) = tangle_words(p[i]);
            (u.substitute(&images), v.substitute(&images))
        })
        .collect();
    // v_k u_{k+1} = 1 for k = 1..n; the last one follows from the others
    (0..n - 1)
        .map(|i| bottoms[i].1.concat(&bottoms[i + 1].0).free_reduce())
        .collect()
}

fn pair_power(i: usize, j: usize, e: i64) -> Word {
    Word(vec![Letter::gen(i), Letter::gen(j)]).pow(e)
}

fn quotient_relators(p: &[i64]) -> Vec<Word> {
    let n = p.len();
    let s1 = Word(vec![Letter::gen(0)]);
    let mut rels = vec![s1.pow(4)];
    for i in 1..n {
        rels.push(s1.pow(2).concat(&Word(vec![Letter::gen(i)]).pow(-2)));
    }
    for i in 0..n - 1 {
        let a = pair_power(i, i + 1, p[i]);
        let b = pair_power(i + 1, (i + 2) % n, p[i + 1]);
        rels.push(a.concat(&b.inverse()));
    }
    rels
}
