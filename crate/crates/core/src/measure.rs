//! Atomic probability measures and the weak-* test machinery.
//!
//! An [`AtomicMeasure`] is a finite convex combination of point masses on one
//! phase space. Pairings against test functions come in three forms:
//! pointwise integration, Fourier coefficients (torus only), and a weighted
//! max-form weak-* distance over a finite [`TestDictionary`].

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::point::{word_from_string, word_to_string, Point, TorusCoords, Word};
use crate::rat::{frac, rat_to_f64, Rat};

/// Weight-sum slack tolerated by measure validation.
pub const MASS_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct AtomicMeasure {
    atoms: Vec<(Point, f64)>,
}

impl AtomicMeasure {
    /// Build a measure from weighted points. Atoms at equal points are merged
    /// by weight addition; the result is sorted by point so equal measures
    /// have equal representations. Weights must be nonnegative and sum to 1
    /// within [`MASS_TOL`].
    pub fn new(atoms: Vec<(Point, f64)>) -> Result<AtomicMeasure> {
        if atoms.is_empty() {
            return Err(Error::InvalidMeasure("no atoms".into()));
        }
        let mut merged: BTreeMap<Point, f64> = BTreeMap::new();
        let mut total = 0.0;
        for (p, w) in atoms {
            if !w.is_finite() || w < 0.0 {
                return Err(Error::InvalidMeasure(format!("weight {w} at {p}")));
            }
            total += w;
            *merged.entry(p).or_insert(0.0) += w;
        }
        if (total - 1.0).abs() > MASS_TOL {
            return Err(Error::InvalidMeasure(format!("weights sum to {total}")));
        }
        let atoms: Vec<(Point, f64)> = merged.into_iter().collect();
        check_same_space(&atoms)?;
        Ok(AtomicMeasure { atoms })
    }

    pub fn point_mass(p: Point) -> AtomicMeasure {
        AtomicMeasure {
            atoms: vec![(p, 1.0)],
        }
    }

    pub fn uniform(points: Vec<Point>) -> Result<AtomicMeasure> {
        let n = points.len();
        if n == 0 {
            return Err(Error::InvalidMeasure("no atoms".into()));
        }
        let w = 1.0 / n as f64;
        AtomicMeasure::new(points.into_iter().map(|p| (p, w)).collect())
    }

    pub fn atoms(&self) -> &[(Point, f64)] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|(_, w)| w).sum()
    }

    /// Weight carried by exactly this point (0.0 if absent).
    pub fn weight_at(&self, p: &Point) -> f64 {
        self.atoms
            .binary_search_by(|(q, _)| q.cmp(p))
            .map(|i| self.atoms[i].1)
            .unwrap_or(0.0)
    }

    /// ∫ g dμ as a finite sum over atoms.
    pub fn integrate(&self, g: &TestFunction) -> Result<f64> {
        let mut acc = 0.0;
        for (p, w) in &self.atoms {
            acc += w * g.eval(p)?;
        }
        Ok(acc)
    }

    /// μ̂(k) = ∫ e^(−2πi k·x) dμ(x). Torus measures only.
    pub fn fourier_coefficient(&self, freq: &[i64]) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (p, w) in &self.atoms {
            let t = character_phase(p, freq)?;
            acc += Complex64::new(*w, 0.0) * Complex64::new(0.0, -TAU * t).exp();
        }
        Ok(acc)
    }

    /// CSV body: one atom per row. Torus headers are `x0,..,x{m-1},weight`
    /// with `p/q` rationals (or decimals for perturbed points); shift headers
    /// are `head,tail,weight`.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        match &self.atoms[0].0 {
            Point::Torus(_) => {
                let m = self.atoms[0].0.torus_dim().unwrap();
                let cols: Vec<String> = (0..m).map(|i| format!("x{i}")).collect();
                out.push_str(&cols.join(","));
                out.push_str(",weight\n");
                for (p, w) in &self.atoms {
                    match p {
                        Point::Torus(TorusCoords::Exact(c)) => {
                            for r in c {
                                out.push_str(&crate::rat::rat_to_string(r));
                                out.push(',');
                            }
                        }
                        Point::Torus(TorusCoords::Approx(c)) => {
                            for k in c {
                                out.push_str(&format!("{},", k.0));
                            }
                        }
                        Point::Shift { .. } => unreachable!("mixed spaces rejected on build"),
                    }
                    out.push_str(&format!("{w}\n"));
                }
            }
            Point::Shift { .. } => {
                out.push_str("head,tail,weight\n");
                for (p, w) in &self.atoms {
                    if let Point::Shift { head, tail } = p {
                        out.push_str(&format!(
                            "{},{},{w}\n",
                            word_to_string(head),
                            word_to_string(tail)
                        ));
                    }
                }
            }
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<AtomicMeasure> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty CSV".into()))?;
        let cols: Vec<&str> = header.split(',').map(str::trim).collect();
        if cols.last() != Some(&"weight") {
            return Err(Error::Parse("last CSV column must be weight".into()));
        }
        let shift = cols == ["head", "tail", "weight"];
        let mut atoms = Vec::new();
        for line in lines {
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != cols.len() {
                return Err(Error::Parse(format!("bad CSV row {line:?}")));
            }
            let w: f64 = fields[fields.len() - 1]
                .parse()
                .map_err(|e| Error::Parse(format!("bad weight in {line:?}: {e}")))?;
            let p = if shift {
                Point::shift(word_from_string(fields[0])?, word_from_string(fields[1])?)?
            } else if fields[..fields.len() - 1].iter().any(|f| f.contains('/')) {
                let coords: Result<Vec<Rat>> = fields[..fields.len() - 1]
                    .iter()
                    .map(|f| crate::rat::rat_from_string(f))
                    .collect();
                Point::torus(coords?)
            } else {
                let coords: std::result::Result<Vec<f64>, _> = fields[..fields.len() - 1]
                    .iter()
                    .map(|f| f.parse())
                    .collect();
                let coords = coords.map_err(|e| Error::Parse(format!("bad coord: {e}")))?;
                // Integer-valued columns are still exact rationals.
                if fields[..fields.len() - 1].iter().all(|f| !f.contains('.')) {
                    Point::torus(
                        coords
                            .iter()
                            .map(|&c| Rat::from_integer(BigInt::from(c as i64)))
                            .collect(),
                    )
                } else {
                    Point::torus_f64(coords)?
                }
            };
            atoms.push((p, w));
        }
        AtomicMeasure::new(atoms)
    }
}

fn check_same_space(atoms: &[(Point, f64)]) -> Result<()> {
    let first = &atoms[0].0;
    for (p, _) in &atoms[1..] {
        let ok = match (first, p) {
            (Point::Torus(a), Point::Torus(b)) => {
                let dims = |c: &TorusCoords| match c {
                    TorusCoords::Exact(v) => v.len(),
                    TorusCoords::Approx(v) => v.len(),
                };
                dims(a) == dims(b)
            }
            (Point::Shift { .. }, Point::Shift { .. }) => true,
            _ => false,
        };
        if !ok {
            return Err(Error::PhaseSpaceMismatch(format!(
                "atoms {first} and {p} mix spaces"
            )));
        }
    }
    Ok(())
}

/// k·x reduced mod 1, exact while the point is exact.
fn character_phase(p: &Point, freq: &[i64]) -> Result<f64> {
    match p {
        Point::Torus(TorusCoords::Exact(c)) => {
            if c.len() != freq.len() {
                return Err(Error::DimensionMismatch {
                    expected: c.len(),
                    got: freq.len(),
                });
            }
            let mut dot = Rat::from_integer(BigInt::from(0));
            for (r, &k) in c.iter().zip(freq) {
                dot += r * Rat::from_integer(BigInt::from(k));
            }
            Ok(rat_to_f64(&frac(&dot)))
        }
        Point::Torus(TorusCoords::Approx(c)) => {
            if c.len() != freq.len() {
                return Err(Error::DimensionMismatch {
                    expected: c.len(),
                    got: freq.len(),
                });
            }
            let dot: f64 = c.iter().zip(freq).map(|(x, &k)| x.0 * k as f64).sum();
            Ok(dot.rem_euclid(1.0))
        }
        Point::Shift { .. } => Err(Error::PhaseSpaceMismatch(
            "character evaluated on a shift point".into(),
        )),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CharacterPart {
    Re,
    Im,
}

/// Test functions the dictionaries and estimators integrate against.
#[derive(Clone)]
pub enum TestFunction {
    /// cos(2π k·x) for `Re`, sin(2π k·x) for `Im`. `k = 0, Re` is the
    /// constant function 1.
    Character { freq: Vec<i64>, part: CharacterPart },
    /// Indicator of the cylinder set [word] on a shift space. The empty word
    /// is the whole space.
    Cylinder { word: Word },
    /// The constant function 1 on either phase space.
    Constant,
    /// Arbitrary tabulated callback, identified by name in reports.
    Tabulated {
        id: String,
        f: Arc<dyn Fn(&Point) -> f64 + Send + Sync>,
    },
}

impl fmt::Debug for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.id())
    }
}

impl TestFunction {
    pub fn character(freq: Vec<i64>, part: CharacterPart) -> TestFunction {
        TestFunction::Character { freq, part }
    }

    pub fn cylinder(word: Word) -> TestFunction {
        TestFunction::Cylinder { word }
    }

    pub fn constant() -> TestFunction {
        TestFunction::Constant
    }

    pub fn tabulated(
        id: impl Into<String>,
        f: impl Fn(&Point) -> f64 + Send + Sync + 'static,
    ) -> TestFunction {
        TestFunction::Tabulated {
            id: id.into(),
            f: Arc::new(f),
        }
    }

    pub fn eval(&self, p: &Point) -> Result<f64> {
        match self {
            TestFunction::Character { freq, part } => {
                let t = TAU * character_phase(p, freq)?;
                Ok(match part {
                    CharacterPart::Re => t.cos(),
                    CharacterPart::Im => t.sin(),
                })
            }
            TestFunction::Cylinder { word } => match p.starts_with(word) {
                Some(true) => Ok(1.0),
                Some(false) => Ok(0.0),
                None => Err(Error::PhaseSpaceMismatch(
                    "cylinder evaluated on a torus point".into(),
                )),
            },
            TestFunction::Constant => Ok(1.0),
            TestFunction::Tabulated { f, .. } => Ok(f(p)),
        }
    }

    /// Stable identifier used in report rows.
    pub fn id(&self) -> String {
        match self {
            TestFunction::Character { freq, part } => {
                let k: Vec<String> = freq.iter().map(|v| v.to_string()).collect();
                let tag = match part {
                    CharacterPart::Re => "cos",
                    CharacterPart::Im => "sin",
                };
                format!("{tag}({})", k.join(";"))
            }
            TestFunction::Cylinder { word } => format!("[{}]", word_to_string(word)),
            TestFunction::Constant => "1".into(),
            TestFunction::Tabulated { id, .. } => id.clone(),
        }
    }
}

/// How dictionary entries are weighted in the max-form distance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightScheme {
    Uniform,
    /// 1/(1+|k|²) for characters, 1/(1+ℓ²) for length-ℓ cylinders. Damps the
    /// high-frequency noise inherent to atomic approximations.
    Decay,
}

/// Finite family of weighted test functions defining the weak-* distance.
#[derive(Clone, Debug)]
pub struct TestDictionary {
    label: String,
    entries: Vec<(TestFunction, f64)>,
}

impl TestDictionary {
    /// Both trigonometric parts of every nonzero character with |k|∞ ≤ `max_freq`
    /// (one representative per ±k pair, which carry equal pairing moduli).
    pub fn torus_characters(dim: usize, max_freq: i64, scheme: WeightScheme) -> Result<Self> {
        if dim == 0 || max_freq < 1 {
            return Err(Error::Parse(
                "character dictionary needs dim >= 1, max_freq >= 1".into(),
            ));
        }
        let mut entries = Vec::new();
        let mut k = vec![-max_freq; dim];
        loop {
            if k.iter().any(|&v| v != 0) && k.iter().find(|&&v| v != 0) > Some(&0) {
                let norm2: i64 = k.iter().map(|v| v * v).sum();
                let w = match scheme {
                    WeightScheme::Uniform => 1.0,
                    WeightScheme::Decay => 1.0 / (1.0 + norm2 as f64),
                };
                for part in [CharacterPart::Re, CharacterPart::Im] {
                    entries.push((TestFunction::character(k.clone(), part), w));
                }
            }
            let mut i = 0;
            loop {
                if i == dim {
                    let label = format!("characters(K={max_freq};{scheme:?})");
                    return Ok(TestDictionary { label, entries });
                }
                k[i] += 1;
                if k[i] <= max_freq {
                    break;
                }
                k[i] = -max_freq;
                i += 1;
            }
        }
    }

    /// Indicators of the given cylinder words.
    pub fn cylinders(words: Vec<Word>, scheme: WeightScheme) -> Result<Self> {
        if words.is_empty() {
            return Err(Error::EmptyDictionary);
        }
        let max_len = words.iter().map(Vec::len).max().unwrap();
        let entries = words
            .into_iter()
            .map(|w| {
                let weight = match scheme {
                    WeightScheme::Uniform => 1.0,
                    WeightScheme::Decay => 1.0 / (1.0 + (w.len() * w.len()) as f64),
                };
                (TestFunction::cylinder(w), weight)
            })
            .collect();
        Ok(TestDictionary {
            label: format!("cylinders(L={max_len};{scheme:?})"),
            entries,
        })
    }

    /// Single constant test function; distances against it are always 0.
    pub fn constant() -> Self {
        TestDictionary {
            label: "constant".into(),
            entries: vec![(TestFunction::constant(), 1.0)],
        }
    }

    pub fn custom(label: impl Into<String>, entries: Vec<(TestFunction, f64)>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyDictionary);
        }
        for (g, w) in &entries {
            if !w.is_finite() || *w <= 0.0 {
                return Err(Error::Parse(format!(
                    "weight {w} for {} must be positive",
                    g.id()
                )));
            }
        }
        Ok(TestDictionary {
            label: label.into(),
            entries,
        })
    }

    pub fn entries(&self) -> &[(TestFunction, f64)] {
        &self.entries
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

/// Anything a measure can be weak-* compared against: another atomic measure
/// or an exact reference (oracle) that can integrate dictionary entries.
pub trait Pairing: Sync {
    fn pair(&self, g: &TestFunction) -> Result<f64>;
}

impl Pairing for AtomicMeasure {
    fn pair(&self, g: &TestFunction) -> Result<f64> {
        self.integrate(g)
    }
}

/// max over the dictionary of w(g) · |<μ, g> − <ν, g>|.
pub fn weak_star_distance(
    mu: &dyn Pairing,
    nu: &dyn Pairing,
    dict: &TestDictionary,
) -> Result<f64> {
    if dict.entries.is_empty() {
        return Err(Error::EmptyDictionary);
    }
    let mut best = 0.0f64;
    for (g, w) in &dict.entries {
        let d = w * (mu.pair(g)? - nu.pair(g)?).abs();
        best = best.max(d);
    }
    Ok(best)
}

#[derive(Serialize, Deserialize)]
struct MeasureRepr {
    atoms: Vec<AtomRepr>,
}

#[derive(Serialize, Deserialize)]
struct AtomRepr {
    point: Point,
    weight: f64,
}

impl Serialize for AtomicMeasure {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        MeasureRepr {
            atoms: self
                .atoms
                .iter()
                .map(|(p, w)| AtomRepr {
                    point: p.clone(),
                    weight: *w,
                })
                .collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for AtomicMeasure {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let repr = MeasureRepr::deserialize(de)?;
        AtomicMeasure::new(
            repr.atoms
                .into_iter()
                .map(|a| (a.point, a.weight))
                .collect(),
        )
        .map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::Point;

    fn grid_six() -> AtomicMeasure {
        // preimages of 0 under diag(2,3): {(i/2, j/3)}
        let mut pts = Vec::new();
        for i in 0..2 {
            for j in 0..3 {
                pts.push(Point::torus_i64(&[(i, 2), (j, 3)]));
            }
        }
        AtomicMeasure::uniform(pts).unwrap()
    }

    #[test]
    fn integrate_character_at_origin_is_one() {
        let mu = AtomicMeasure::point_mass(Point::torus_i64(&[(0, 1), (0, 1)]));
        let g = TestFunction::character(vec![1, 0], CharacterPart::Re);
        assert_eq!(mu.integrate(&g).unwrap(), 1.0);
    }

    #[test]
    fn integrate_cylinder_on_two_leaves() {
        let x0 = Point::periodic(&[0]).unwrap();
        let x1 = Point::shift(vec![1], vec![0]).unwrap();
        let mu = AtomicMeasure::new(vec![(x0, 0.5), (x1, 0.5)]).unwrap();
        assert_eq!(mu.integrate(&TestFunction::cylinder(vec![0])).unwrap(), 0.5);
        assert_eq!(mu.integrate(&TestFunction::cylinder(vec![1])).unwrap(), 0.5);
        assert_eq!(mu.integrate(&TestFunction::cylinder(vec![])).unwrap(), 1.0);
    }

    #[test]
    fn character_sum_over_grid_vanishes() {
        let g = TestFunction::character(vec![1, 0], CharacterPart::Re);
        assert!(grid_six().integrate(&g).unwrap().abs() < 1e-15);
    }

    #[test]
    fn fourier_frozen_cases() {
        // uniform on {i/5}: k=1 averages the 5th roots of unity to 0
        let grid5 =
            AtomicMeasure::uniform((0..5).map(|i| Point::torus_i64(&[(i, 5)])).collect()).unwrap();
        assert!(grid5.fourier_coefficient(&[1]).unwrap().norm() < 1e-15);

        let delta = AtomicMeasure::point_mass(Point::torus_i64(&[(0, 1)]));
        for k in [-3i64, 1, 7] {
            let c = delta.fourier_coefficient(&[k]).unwrap();
            assert!((c - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        }

        let pair = AtomicMeasure::new(vec![
            (Point::torus_i64(&[(0, 1), (0, 1)]), 0.5),
            (Point::torus_i64(&[(1, 2), (0, 1)]), 0.5),
        ])
        .unwrap();
        assert!(pair.fourier_coefficient(&[1, 0]).unwrap().norm() < 1e-15);

        // normalization: hat(mu)(0) = 1 and |hat(mu)(k)| <= 1
        for mu in [grid_six(), pair] {
            let c0 = mu.fourier_coefficient(&[0, 0]).unwrap();
            assert!((c0 - Complex64::new(1.0, 0.0)).norm() < 1e-14);
            assert!(mu.fourier_coefficient(&[2, -1]).unwrap().norm() <= 1.0 + 1e-14);
        }
    }

    #[test]
    fn fourier_rejects_shift_measures() {
        let mu = AtomicMeasure::point_mass(Point::periodic(&[0]).unwrap());
        assert!(matches!(
            mu.fourier_coefficient(&[1]),
            Err(Error::PhaseSpaceMismatch(_))
        ));
    }

    #[test]
    fn delta_vs_haar_unit_distance() {
        // max over K=1 characters with w=1: cos(0) - 0 = 1
        let mu = AtomicMeasure::point_mass(Point::torus_i64(&[(0, 1)]));
        let dict = TestDictionary::torus_characters(1, 1, WeightScheme::Uniform).unwrap();
        struct Haar1;
        impl Pairing for Haar1 {
            fn pair(&self, g: &TestFunction) -> Result<f64> {
                match g {
                    TestFunction::Character { freq, part } => Ok(
                        if freq.iter().all(|&k| k == 0) && *part == CharacterPart::Re {
                            1.0
                        } else {
                            0.0
                        },
                    ),
                    _ => Err(Error::UnsupportedPairing(g.id())),
                }
            }
        }
        assert_eq!(weak_star_distance(&mu, &Haar1, &dict).unwrap(), 1.0);
    }

    #[test]
    fn distance_requires_matching_spaces_and_nonempty_dict() {
        let mu = AtomicMeasure::point_mass(Point::torus_i64(&[(0, 1)]));
        let nu = AtomicMeasure::point_mass(Point::periodic(&[1]).unwrap());
        let dict = TestDictionary::torus_characters(1, 1, WeightScheme::Uniform).unwrap();
        assert!(weak_star_distance(&mu, &nu, &dict).is_err());
        assert!(TestDictionary::cylinders(vec![], WeightScheme::Uniform).is_err());
    }

    #[test]
    fn validation_rejects_bad_weights() {
        let p = Point::torus_i64(&[(0, 1)]);
        assert!(AtomicMeasure::new(vec![(p.clone(), 0.5)]).is_err());
        assert!(AtomicMeasure::new(vec![(p.clone(), 1.5), (p.clone(), -0.5)]).is_err());
        assert!(AtomicMeasure::new(vec![(p, f64::NAN)]).is_err());
    }

    #[test]
    fn duplicate_atoms_merge() {
        let p = Point::torus_i64(&[(1, 2)]);
        let q = Point::torus_i64(&[(0, 1)]);
        let mu = AtomicMeasure::new(vec![(p.clone(), 0.25), (q, 0.5), (p.clone(), 0.25)]).unwrap();
        assert_eq!(mu.len(), 2);
        assert_eq!(mu.weight_at(&p), 0.5);
    }

    #[test]
    fn csv_round_trip_both_spaces() {
        let shift = AtomicMeasure::new(vec![
            (Point::periodic(&[0]).unwrap(), 0.25),
            (Point::shift(vec![1, 1], vec![0]).unwrap(), 0.75),
        ])
        .unwrap();
        let back = AtomicMeasure::from_csv(&shift.to_csv()).unwrap();
        assert_eq!(shift, back);

        let torus = grid_six();
        let back = AtomicMeasure::from_csv(&torus.to_csv()).unwrap();
        assert_eq!(torus, back);

        let approx = AtomicMeasure::new(vec![
            (Point::torus_f64(vec![0.125, 0.5]).unwrap(), 0.5),
            (Point::torus_f64(vec![0.7, 0.1]).unwrap(), 0.5),
        ])
        .unwrap();
        let back = AtomicMeasure::from_csv(&approx.to_csv()).unwrap();
        assert_eq!(approx, back);
    }

    #[test]
    fn json_round_trip() {
        let mu = grid_six();
        let s = serde_json::to_string(&mu).unwrap();
        let back: AtomicMeasure = serde_json::from_str(&s).unwrap();
        assert_eq!(mu, back);
    }

    #[test]
    fn character_dictionary_enumerates_half_lattice() {
        let d = TestDictionary::torus_characters(2, 1, WeightScheme::Uniform).unwrap();
        // nonzero k in {-1,0,1}^2 up to sign: 4 representatives, 2 parts each
        assert_eq!(d.entries().len(), 8);
        let d = TestDictionary::torus_characters(2, 1, WeightScheme::Decay).unwrap();
        let w_10 = d
            .entries()
            .iter()
            .find(|(g, _)| g.id() == "cos(1;0)")
            .map(|(_, w)| *w)
            .unwrap();
        assert_eq!(w_10, 0.5);
    }
}
