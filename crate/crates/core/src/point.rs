//! Phase-space points shared by every module.
//!
//! A point is either a torus point (exact rational coordinates wherever maps
//! stay linear, binary64 once a perturbation is active) or a one-sided
//! eventually periodic symbol sequence written as `head` followed by `tail`
//! repeated forever. Shift points are kept in a canonical form so structural
//! equality coincides with equality of the underlying sequences, which is
//! what atom merging in measures relies on.

use std::cmp::Ordering;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rat::{frac, rat_from_string, rat_to_string, Rat};

/// Symbol string over alphabet {0, .., s-1}.
pub type Word = Vec<u8>;

/// Torus coordinates: exact rationals for linear maps, binary64 after a
/// perturbation makes preimages transcendental.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TorusCoords {
    Exact(Vec<Rat>),
    Approx(Vec<F64Key>),
}

/// f64 wrapper with bitwise equality/order so points can key maps.
/// NaN is rejected at construction time.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct F64Key(pub f64);

impl Eq for F64Key {}

impl std::hash::Hash for F64Key {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.to_bits().hash(state);
    }
}

impl PartialOrd for F64Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for F64Key {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Torus(TorusCoords),
    /// Canonical eventually periodic sequence `head · tail^∞`.
    Shift {
        head: Word,
        tail: Word,
    },
}

impl Point {
    /// Exact torus point; coordinates are reduced into [0, 1).
    pub fn torus(coords: Vec<Rat>) -> Point {
        Point::Torus(TorusCoords::Exact(coords.iter().map(frac).collect()))
    }

    pub fn torus_i64(coords: &[(i64, i64)]) -> Point {
        Point::torus(
            coords
                .iter()
                .map(|&(n, d)| crate::rat::rat_from_i64(n, d))
                .collect(),
        )
    }

    /// Binary64 torus point; coordinates are reduced into [0, 1).
    pub fn torus_f64(coords: Vec<f64>) -> Result<Point> {
        let mut out = Vec::with_capacity(coords.len());
        for c in coords {
            if !c.is_finite() {
                return Err(Error::InvalidPoint(format!("non-finite coordinate {c}")));
            }
            let mut r = c.rem_euclid(1.0);
            if r >= 1.0 {
                r = 0.0;
            }
            out.push(F64Key(r));
        }
        Ok(Point::Torus(TorusCoords::Approx(out)))
    }

    /// Eventually periodic shift point `head · tail^∞`; the representation is
    /// canonicalized (primitive tail, head suffix absorbed into the rotation).
    pub fn shift(head: Word, tail: Word) -> Result<Point> {
        if tail.is_empty() {
            return Err(Error::InvalidPoint("empty periodic tail".into()));
        }
        let (head, tail) = canonical_shift(head, tail);
        Ok(Point::Shift { head, tail })
    }

    /// Purely periodic point `word^∞`.
    pub fn periodic(word: &[u8]) -> Result<Point> {
        Point::shift(Vec::new(), word.to_vec())
    }

    pub fn torus_dim(&self) -> Option<usize> {
        match self {
            Point::Torus(TorusCoords::Exact(c)) => Some(c.len()),
            Point::Torus(TorusCoords::Approx(c)) => Some(c.len()),
            Point::Shift { .. } => None,
        }
    }

    pub fn is_torus(&self) -> bool {
        matches!(self, Point::Torus(_))
    }

    /// Coordinates as binary64 regardless of representation.
    pub fn coords_f64(&self) -> Option<Vec<f64>> {
        match self {
            Point::Torus(TorusCoords::Exact(c)) => {
                Some(c.iter().map(crate::rat::rat_to_f64).collect())
            }
            Point::Torus(TorusCoords::Approx(c)) => Some(c.iter().map(|k| k.0).collect()),
            Point::Shift { .. } => None,
        }
    }

    pub fn exact_coords(&self) -> Option<&[Rat]> {
        match self {
            Point::Torus(TorusCoords::Exact(c)) => Some(c),
            _ => None,
        }
    }

    /// Symbol at position `i` of a shift point.
    pub fn symbol(&self, i: usize) -> Option<u8> {
        match self {
            Point::Shift { head, tail } => Some(if i < head.len() {
                head[i]
            } else {
                tail[(i - head.len()) % tail.len()]
            }),
            Point::Torus(_) => None,
        }
    }

    /// Does the sequence of a shift point start with `word`?
    pub fn starts_with(&self, word: &[u8]) -> Option<bool> {
        match self {
            Point::Shift { .. } => Some(
                word.iter()
                    .enumerate()
                    .all(|(i, &w)| self.symbol(i) == Some(w)),
            ),
            Point::Torus(_) => None,
        }
    }

    /// First `n` symbols of a shift point.
    pub fn prefix(&self, n: usize) -> Option<Word> {
        match self {
            Point::Shift { .. } => Some((0..n).map(|i| self.symbol(i).unwrap()).collect()),
            Point::Torus(_) => None,
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Torus(TorusCoords::Exact(c)) => {
                write!(
                    f,
                    "({})",
                    c.iter().map(rat_to_string).collect::<Vec<_>>().join(", ")
                )
            }
            Point::Torus(TorusCoords::Approx(c)) => {
                let parts: Vec<String> = c.iter().map(|k| format!("{}", k.0)).collect();
                write!(f, "({})", parts.join(", "))
            }
            Point::Shift { head, tail } => {
                write!(f, "{}({})*", word_to_string(head), word_to_string(tail))
            }
        }
    }
}

/// Reduce `tail` to its primitive period and absorb any head suffix that only
/// restates the periodic part, so equal sequences share one representation.
fn canonical_shift(mut head: Word, mut tail: Word) -> (Word, Word) {
    let p = primitive_period(&tail);
    tail.truncate(p);
    while let Some(&last) = head.last() {
        if last != *tail.last().unwrap() {
            break;
        }
        head.pop();
        tail.rotate_right(1);
    }
    (head, tail)
}

/// Length of the shortest word whose repetition gives `w`.
pub fn primitive_period(w: &[u8]) -> usize {
    let n = w.len();
    for p in 1..n {
        if n % p == 0 && w.iter().enumerate().all(|(i, &c)| c == w[i % p]) {
            return p;
        }
    }
    n
}

const SYMBOL_CHARS: &[u8] = b"0123456789abcdefghijklmnopqrstuvwxyz";

pub fn symbol_to_char(s: u8) -> char {
    if (s as usize) < SYMBOL_CHARS.len() {
        SYMBOL_CHARS[s as usize] as char
    } else {
        '?'
    }
}

pub fn word_to_string(w: &[u8]) -> String {
    w.iter().map(|&s| symbol_to_char(s)).collect()
}

pub fn word_from_string(s: &str) -> Result<Word> {
    s.trim()
        .chars()
        .map(|c| {
            SYMBOL_CHARS
                .iter()
                .position(|&b| b as char == c)
                .map(|i| i as u8)
                .ok_or_else(|| Error::Parse(format!("bad symbol {c:?} in word {s:?}")))
        })
        .collect()
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "space", rename_all = "kebab-case")]
enum PointRepr {
    Torus {
        #[serde(skip_serializing_if = "Option::is_none")]
        coords: Option<Vec<String>>,
        #[serde(skip_serializing_if = "Option::is_none")]
        coords_f64: Option<Vec<f64>>,
    },
    Shift {
        head: String,
        tail: String,
    },
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = match self {
            Point::Torus(TorusCoords::Exact(c)) => PointRepr::Torus {
                coords: Some(c.iter().map(rat_to_string).collect()),
                coords_f64: None,
            },
            Point::Torus(TorusCoords::Approx(c)) => PointRepr::Torus {
                coords: None,
                coords_f64: Some(c.iter().map(|k| k.0).collect()),
            },
            Point::Shift { head, tail } => PointRepr::Shift {
                head: word_to_string(head),
                tail: word_to_string(tail),
            },
        };
        repr.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        match PointRepr::deserialize(de)? {
            PointRepr::Torus {
                coords: Some(c), ..
            } => {
                let coords: std::result::Result<Vec<Rat>, _> =
                    c.iter().map(|s| rat_from_string(s)).collect();
                Ok(Point::torus(coords.map_err(D::Error::custom)?))
            }
            PointRepr::Torus {
                coords_f64: Some(c),
                ..
            } => Point::torus_f64(c).map_err(D::Error::custom),
            PointRepr::Torus { .. } => Err(D::Error::custom("torus point without coordinates")),
            PointRepr::Shift { head, tail } => Point::shift(
                word_from_string(&head).map_err(D::Error::custom)?,
                word_from_string(&tail).map_err(D::Error::custom)?,
            )
            .map_err(D::Error::custom),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_canonicalization_merges_equal_sequences() {
        let a = Point::shift(vec![0], vec![0]).unwrap();
        let b = Point::periodic(&[0]).unwrap();
        assert_eq!(a, b);

        let c = Point::shift(vec![1, 0], vec![1, 0]).unwrap();
        let d = Point::periodic(&[1, 0]).unwrap();
        assert_eq!(c, d);

        let e = Point::periodic(&[0, 1, 0, 1]).unwrap();
        assert_eq!(e, Point::periodic(&[0, 1]).unwrap());

        // 01(10)* = 0(11 0)*... spelled out: 0,1,1,0,1,0,1,0,... vs 0,1,(10)*
        let f = Point::shift(vec![0, 1], vec![1, 0]).unwrap();
        let g = Point::shift(vec![0, 1, 1], vec![0, 1]).unwrap();
        assert_eq!(f, g);

        assert_ne!(
            Point::periodic(&[0, 1]).unwrap(),
            Point::periodic(&[1, 0]).unwrap()
        );
    }

    #[test]
    fn shift_symbols_follow_head_then_tail() {
        let p = Point::shift(vec![2], vec![0, 1]).unwrap();
        let got: Vec<u8> = (0..6).map(|i| p.symbol(i).unwrap()).collect();
        assert_eq!(got, vec![2, 0, 1, 0, 1, 0]);
        assert_eq!(p.starts_with(&[2, 0, 1]), Some(true));
        assert_eq!(p.starts_with(&[2, 1]), Some(false));
    }

    #[test]
    fn torus_points_reduce_mod_one() {
        let p = Point::torus_i64(&[(3, 2), (-1, 4)]);
        assert_eq!(p, Point::torus_i64(&[(1, 2), (3, 4)]));
        let q = Point::torus_f64(vec![1.25, -0.25]).unwrap();
        assert_eq!(q.coords_f64().unwrap(), vec![0.25, 0.75]);
        assert!(Point::torus_f64(vec![f64::NAN]).is_err());
    }

    #[test]
    fn point_json_round_trip() {
        for p in [
            Point::torus_i64(&[(1, 2), (2, 3)]),
            Point::torus_f64(vec![0.125, 0.5]).unwrap(),
            Point::shift(vec![1], vec![0, 1]).unwrap(),
        ] {
            let s = serde_json::to_string(&p).unwrap();
            let back: Point = serde_json::from_str(&s).unwrap();
            assert_eq!(p, back);
        }
    }

    #[test]
    fn word_strings_round_trip() {
        let w = word_from_string("0110").unwrap();
        assert_eq!(w, vec![0, 1, 1, 0]);
        assert_eq!(word_to_string(&w), "0110");
        assert!(word_from_string("01x2!").is_err());
    }
}
