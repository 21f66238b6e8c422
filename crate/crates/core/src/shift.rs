//! One-sided subshifts of finite type and locally constant potentials.
//!
//! Points are the eventually periodic sequences of [`Point`], so preimages,
//! forward shifts, and periodic points are all exact word operations with no
//! numerical content.

use serde::{Deserialize, Serialize};

use crate::dynamics::{DynamicalSystem, Potential, SpaceKind};
use crate::error::{Error, Result};
use crate::intmat::IMat;
use crate::measure::{TestDictionary, WeightScheme};
use crate::point::{word_to_string, Point, Word};

/// Largest alphabet whose symbols have single-character names in words.
pub const MAX_ALPHABET: usize = 36;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftSystem {
    alphabet: usize,
    adjacency: Vec<Vec<bool>>,
}

impl ShiftSystem {
    /// Subshift from a 0/1 adjacency matrix; `adjacency[a][b]` permits the
    /// word `ab`. The matrix must be primitive: some power strictly positive,
    /// which by Wielandt's bound happens within (s−1)² + 1 steps or never.
    pub fn new(adjacency_rows: &[Vec<u8>]) -> Result<ShiftSystem> {
        let s = adjacency_rows.len();
        if s < 2 {
            return Err(Error::InvalidSystem(
                "alphabet must have at least 2 symbols".into(),
            ));
        }
        if s > MAX_ALPHABET {
            return Err(Error::InvalidSystem(format!(
                "alphabet size {s} exceeds the {MAX_ALPHABET}-symbol word encoding"
            )));
        }
        let mut adjacency = vec![vec![false; s]; s];
        for (i, row) in adjacency_rows.iter().enumerate() {
            if row.len() != s {
                return Err(Error::DimensionMismatch {
                    expected: s,
                    got: row.len(),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                match v {
                    0 => {}
                    1 => adjacency[i][j] = true,
                    other => {
                        return Err(Error::InvalidSystem(format!(
                            "adjacency entries must be 0/1, found {other}"
                        )))
                    }
                }
            }
        }
        let sys = ShiftSystem {
            alphabet: s,
            adjacency,
        };
        if !sys.is_primitive() {
            return Err(Error::InvalidSystem(
                "adjacency matrix is not primitive (no power is strictly positive)".into(),
            ));
        }
        Ok(sys)
    }

    pub fn full_shift(alphabet: usize) -> Result<ShiftSystem> {
        ShiftSystem::new(&vec![vec![1u8; alphabet]; alphabet])
    }

    /// The golden-mean shift: binary sequences with no adjacent 1s.
    pub fn golden_mean() -> ShiftSystem {
        ShiftSystem::new(&[vec![1, 1], vec![1, 0]]).unwrap()
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn allowed(&self, a: u8, b: u8) -> bool {
        self.adjacency[a as usize][b as usize]
    }

    pub fn is_full(&self) -> bool {
        self.adjacency.iter().all(|row| row.iter().all(|&v| v))
    }

    fn is_primitive(&self) -> bool {
        let s = self.alphabet;
        let mut power = self.adjacency.clone();
        let bound = (s - 1) * (s - 1) + 1;
        for _ in 0..bound {
            if power.iter().all(|row| row.iter().all(|&v| v)) {
                return true;
            }
            let mut next = vec![vec![false; s]; s];
            for i in 0..s {
                for j in 0..s {
                    next[i][j] = (0..s).any(|k| power[i][k] && self.adjacency[k][j]);
                }
            }
            power = next;
        }
        power.iter().all(|row| row.iter().all(|&v| v))
    }

    pub fn legal_word(&self, w: &[u8]) -> bool {
        w.iter().all(|&c| (c as usize) < self.alphabet)
            && w.windows(2).all(|p| self.allowed(p[0], p[1]))
    }

    /// Legal words of exactly this length, lexicographic.
    pub fn words(&self, len: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(len);
        self.extend_words(len, &mut cur, &mut out);
        out
    }

    fn extend_words(&self, len: usize, cur: &mut Word, out: &mut Vec<Word>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for a in 0..self.alphabet as u8 {
            if cur.last().map_or(true, |&prev| self.allowed(prev, a)) {
                cur.push(a);
                self.extend_words(len, cur, out);
                cur.pop();
            }
        }
    }

    /// Legal words of lengths 1..=max_len, shortest first, lexicographic
    /// within a length.
    pub fn words_up_to(&self, max_len: usize) -> Vec<Word> {
        (1..=max_len).flat_map(|l| self.words(l)).collect()
    }

    /// Words legal as cycles: every transition legal including the wrap from
    /// last to first symbol. These index Fix(σⁿ).
    pub fn circular_words(&self, len: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(len);
        self.extend_circular(len, &mut cur, &mut out);
        out
    }

    fn extend_circular(&self, len: usize, cur: &mut Word, out: &mut Vec<Word>) {
        if cur.len() == len {
            if self.allowed(*cur.last().unwrap(), cur[0]) {
                out.push(cur.clone());
            }
            return;
        }
        for a in 0..self.alphabet as u8 {
            if cur.last().map_or(true, |&prev| self.allowed(prev, a)) {
                cur.push(a);
                self.extend_circular(len, cur, out);
                cur.pop();
            }
        }
    }

    /// Dictionary of all legal cylinder indicators with lengths 1..=max_len.
    pub fn cylinder_dictionary(
        &self,
        max_len: usize,
        scheme: WeightScheme,
    ) -> Result<TestDictionary> {
        TestDictionary::cylinders(self.words_up_to(max_len), scheme)
    }

    fn adjacency_imat(&self) -> IMat {
        let mut m = IMat::zero(self.alphabet);
        for i in 0..self.alphabet {
            for j in 0..self.alphabet {
                if self.adjacency[i][j] {
                    m[(i, j)] = 1;
                }
            }
        }
        m
    }
}

impl DynamicalSystem for ShiftSystem {
    fn space(&self) -> SpaceKind {
        SpaceKind::Shift {
            alphabet: self.alphabet,
        }
    }

    fn id(&self) -> String {
        let rows: Vec<String> = self
            .adjacency
            .iter()
            .map(|row| row.iter().map(|&v| if v { '1' } else { '0' }).collect())
            .collect();
        format!("sft({};{})", self.alphabet, rows.join(","))
    }

    fn validate_point(&self, x: &Point) -> Result<()> {
        let Point::Shift { head, tail } = x else {
            return Err(Error::PhaseSpaceMismatch(
                "torus point fed to a shift".into(),
            ));
        };
        let span = head.len() + tail.len();
        for i in 0..span {
            let a = x.symbol(i).unwrap();
            if a as usize >= self.alphabet {
                return Err(Error::InvalidPoint(format!(
                    "symbol {a} outside alphabet of size {}",
                    self.alphabet
                )));
            }
            let b = x.symbol(i + 1).unwrap();
            if !self.allowed(a, b) {
                return Err(Error::InvalidPoint(format!(
                    "forbidden transition {}{} at position {i}",
                    crate::point::symbol_to_char(a),
                    crate::point::symbol_to_char(b)
                )));
            }
        }
        Ok(())
    }

    fn forward(&self, x: &Point) -> Result<Point> {
        self.validate_point(x)?;
        let Point::Shift { head, tail } = x else {
            unreachable!()
        };
        if head.is_empty() {
            let mut rotated = tail[1..].to_vec();
            rotated.push(tail[0]);
            Point::periodic(&rotated)
        } else {
            Point::shift(head[1..].to_vec(), tail.clone())
        }
    }

    fn preimages(&self, x: &Point) -> Result<Vec<Point>> {
        self.validate_point(x)?;
        let first = x.symbol(0).unwrap();
        let Point::Shift { head, tail } = x else {
            unreachable!()
        };
        let mut out = Vec::new();
        for a in 0..self.alphabet as u8 {
            if self.allowed(a, first) {
                let mut h = Vec::with_capacity(head.len() + 1);
                h.push(a);
                h.extend_from_slice(head);
                out.push(Point::shift(h, tail.clone())?);
            }
        }
        Ok(out)
    }

    fn max_degree(&self) -> usize {
        (0..self.alphabet)
            .map(|b| (0..self.alphabet).filter(|&a| self.adjacency[a][b]).count())
            .max()
            .unwrap_or(0)
    }

    fn count_fixed_points(&self, n: usize) -> Result<f64> {
        let p = self.adjacency_imat().pow(n as u32)?;
        let trace: i128 = (0..self.alphabet).map(|i| p[(i, i)]).sum();
        Ok(trace as f64)
    }

    fn fixed_points(&self, n: usize, cap: u64, force: bool) -> Result<Vec<Point>> {
        if n == 0 {
            return Err(Error::InvalidSystem("period must be >= 1".into()));
        }
        let count = self.count_fixed_points(n)?;
        if count > cap as f64 && !force {
            return Err(Error::ResourceCap {
                requested: count,
                cap,
            });
        }
        self.circular_words(n)
            .iter()
            .map(|w| Point::periodic(w))
            .collect()
    }
}

/// Cylinder set on two-sided coordinates: `past` occupies −j..−1 and
/// `future` occupies 0..k. Probes of the natural-extension lift.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnchoredWord {
    pub past: Word,
    pub future: Word,
}

impl AnchoredWord {
    pub fn new(past: Word, future: Word) -> AnchoredWord {
        AnchoredWord { past, future }
    }

    /// Number of constrained past coordinates (the anchor depth j).
    pub fn depth(&self) -> usize {
        self.past.len()
    }

    /// The constraint as one plain word on coordinates −j..k.
    pub fn word(&self) -> Word {
        let mut w = self.past.clone();
        w.extend_from_slice(&self.future);
        w
    }

    pub fn label(&self) -> String {
        format!(
            "{}|{}",
            word_to_string(&self.past),
            word_to_string(&self.future)
        )
    }
}

/// Potential determined by the first `range` symbols.
#[derive(Clone, Debug)]
pub struct LocallyConstantPotential {
    alphabet: usize,
    range: usize,
    /// Indexed by the base-s encoding of the word; NaN marks illegal words.
    values: Vec<f64>,
}

impl LocallyConstantPotential {
    pub fn new(system: &ShiftSystem, range: usize, entries: &[(Word, f64)]) -> Result<Self> {
        if range == 0 {
            return Err(Error::InvalidPotential("range must be >= 1".into()));
        }
        let s = system.alphabet();
        let size = s
            .checked_pow(range as u32)
            .ok_or(Error::Overflow("potential table size"))?;
        let mut values = vec![f64::NAN; size];
        let mut this = LocallyConstantPotential {
            alphabet: s,
            range,
            values: Vec::new(),
        };
        for (w, v) in entries {
            if w.len() != range {
                return Err(Error::InvalidPotential(format!(
                    "word {} has length {}, potential range is {range}",
                    word_to_string(w),
                    w.len()
                )));
            }
            if !system.legal_word(w) {
                return Err(Error::IllegalWord(word_to_string(w)));
            }
            if !v.is_finite() {
                return Err(Error::InvalidPotential(format!(
                    "non-finite value for word {}",
                    word_to_string(w)
                )));
            }
            let idx = this.index(w).unwrap();
            if !values[idx].is_nan() {
                return Err(Error::InvalidPotential(format!(
                    "duplicate entry for word {}",
                    word_to_string(w)
                )));
            }
            values[idx] = *v;
        }
        for w in system.words(range) {
            if values[this.index(&w).unwrap()].is_nan() {
                return Err(Error::InvalidPotential(format!(
                    "missing value for legal word {}",
                    word_to_string(&w)
                )));
            }
        }
        this.values = values;
        Ok(this)
    }

    pub fn from_fn(system: &ShiftSystem, range: usize, f: impl Fn(&[u8]) -> f64) -> Result<Self> {
        let entries: Vec<(Word, f64)> = system
            .words(range)
            .into_iter()
            .map(|w| (w.clone(), f(&w)))
            .collect();
        Self::new(system, range, &entries)
    }

    pub fn zero(system: &ShiftSystem) -> Self {
        Self::from_fn(system, 1, |_| 0.0).unwrap()
    }

    pub fn range(&self) -> usize {
        self.range
    }

    /// A copy with c added to every value (φ + c).
    pub fn shifted(&self, c: f64) -> Self {
        let mut out = self.clone();
        for v in &mut out.values {
            if !v.is_nan() {
                *v += c;
            }
        }
        out
    }

    fn index(&self, w: &[u8]) -> Option<usize> {
        let mut idx = 0usize;
        for &c in w {
            if c as usize >= self.alphabet {
                return None;
            }
            idx = idx * self.alphabet + c as usize;
        }
        Some(idx)
    }

    /// Value on a word of exactly the potential's range.
    pub fn value(&self, w: &[u8]) -> Result<f64> {
        if w.len() != self.range {
            return Err(Error::IllegalWord(word_to_string(w)));
        }
        let v = self.index(w).map(|i| self.values[i]).unwrap_or(f64::NAN);
        if v.is_nan() {
            return Err(Error::IllegalWord(word_to_string(w)));
        }
        Ok(v)
    }
}

impl Potential for LocallyConstantPotential {
    fn space(&self) -> SpaceKind {
        SpaceKind::Shift {
            alphabet: self.alphabet,
        }
    }

    fn id(&self) -> String {
        if self.range <= 2 {
            let vals: Vec<String> = self
                .values
                .iter()
                .map(|v| {
                    if v.is_nan() {
                        "-".into()
                    } else {
                        format!("{v}")
                    }
                })
                .collect();
            format!("lc(r={})[{}]", self.range, vals.join(","))
        } else {
            format!("lc(r={},{} entries)", self.range, self.values.len())
        }
    }

    fn eval(&self, x: &Point) -> Result<f64> {
        let Some(prefix) = x.prefix(self.range) else {
            return Err(Error::PhaseSpaceMismatch(
                "shift potential on a torus point".into(),
            ));
        };
        self.value(&prefix)
    }

    fn constant_value(&self) -> Option<f64> {
        let mut finite = self.values.iter().filter(|v| !v.is_nan());
        match finite.next() {
            None => Some(0.0),
            Some(first) => finite.all(|v| v == first).then_some(*first),
        }
    }
}
