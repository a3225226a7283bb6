//! The de Jonquières group acting on presentations: elementary shifts
//! `(x, y) ↦ (x + a·y^{t-2}, y)` and torus elements `(x, y) ↦ (a·x, b·y)`.

use std::collections::BTreeMap;
use std::fmt;

use crate::extdiv::{gap_charts, ChartMatrix, Gap, OuterLevel, Presentation};
use crate::field::CycNumber;

use super::AutGraphError;

/// A value that is either known exactly or only known to exist.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Determinacy<T> {
    Exact(T),
    /// Moved by a translation whose constant is not determined.
    Indeterminate,
}

impl<T> Determinacy<T> {
    pub fn exact(&self) -> Option<&T> {
        match self {
            Determinacy::Exact(v) => Some(v),
            Determinacy::Indeterminate => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Determinacy::Exact(_))
    }

    fn map(self, f: impl FnOnce(T) -> T) -> Self {
        match self {
            Determinacy::Exact(v) => Determinacy::Exact(f(v)),
            Determinacy::Indeterminate => Determinacy::Indeterminate,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftedLevel {
    pub index: usize,
    pub birth: Option<Determinacy<CycNumber>>,
    pub base_points: Determinacy<Vec<CycNumber>>,
}

/// A presentation after elementary shifts. Inner data is always exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftedPresentation {
    pub conductor: u32,
    pub levels: Vec<ShiftedLevel>,
    pub gaps: Vec<Gap>,
}

impl From<&Presentation> for ShiftedPresentation {
    fn from(p: &Presentation) -> Self {
        ShiftedPresentation {
            conductor: p.conductor(),
            levels: p
                .levels()
                .iter()
                .map(|l| ShiftedLevel {
                    index: l.index,
                    birth: l.birth.clone().map(Determinacy::Exact),
                    base_points: Determinacy::Exact(l.base_points.clone()),
                })
                .collect(),
            gaps: p.gaps().to_vec(),
        }
    }
}

impl ShiftedPresentation {
    /// Number of the last level: the `r` of `k_2, ..., k_r`.
    pub fn r(&self) -> usize {
        self.levels.len() + 1
    }

    /// The elementary shift `h_{a,t}`: `M_{k_t} ↦ a + M_{k_t}`,
    /// `c_{k_{t+1}} ↦ a + c_{k_{t+1}}`, deeper outer data translated by
    /// unknown constants.
    pub fn shift(&self, a: &CycNumber, t: usize) -> Result<Self, AutGraphError> {
        let r = self.r();
        if !(2..=r).contains(&t) {
            return Err(AutGraphError::InvalidLevel { t, r });
        }
        if a.is_zero() {
            return Ok(self.clone());
        }
        let mut out = self.clone();
        for (pos, level) in out.levels.iter_mut().enumerate() {
            let u = pos + 2;
            if u == t {
                level.base_points = std::mem::replace(&mut level.base_points, Determinacy::Indeterminate)
                    .map(|pts| pts.iter().map(|p| a + p).collect());
            } else if u > t {
                level.base_points = Determinacy::Indeterminate;
            }
            if u == t + 1 {
                level.birth = level.birth.take().map(|c| c.map(|c| a + &c));
            } else if u > t + 1 {
                level.birth = Some(Determinacy::Indeterminate);
            }
        }
        Ok(out)
    }

    pub fn is_exact(&self) -> bool {
        self.levels
            .iter()
            .all(|l| l.base_points.is_exact() && l.birth.as_ref().is_none_or(Determinacy::is_exact))
    }

    /// The plain presentation, when nothing is indeterminate.
    pub fn to_presentation(&self) -> Option<Result<Presentation, AutGraphError>> {
        let levels = self
            .levels
            .iter()
            .map(|l| {
                Some(OuterLevel {
                    index: l.index,
                    birth: match &l.birth {
                        None => None,
                        Some(c) => Some(c.exact()?.clone()),
                    },
                    base_points: l.base_points.exact()?.clone(),
                })
            })
            .collect::<Option<Vec<_>>>()?;
        Some(Presentation::new(self.conductor, levels, self.gaps.clone()).map_err(AutGraphError::from))
    }
}

impl fmt::Display for ShiftedPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for level in &self.levels {
            write!(f, "C_{}:", level.index)?;
            if let Some(c) = &level.birth {
                match c {
                    Determinacy::Exact(c) => write!(f, " c = {c}")?,
                    Determinacy::Indeterminate => f.write_str(" c = ?")?,
                }
            }
            match &level.base_points {
                Determinacy::Exact(pts) => {
                    let shown: Vec<String> = pts.iter().map(ToString::to_string).collect();
                    writeln!(f, " M = [{}]", shown.join(", "))?;
                }
                Determinacy::Indeterminate => writeln!(f, " M = ?")?,
            }
        }
        Ok(())
    }
}

pub fn jon_shift_action(p: &Presentation, a: &CycNumber, t: usize) -> Result<ShiftedPresentation, AutGraphError> {
    ShiftedPresentation::from(p).shift(a, t)
}

/// Torus weights: `(p, q)` such that `(a, b)` multiplies the coordinate by
/// `a^p b^q`.
pub type Character = (i64, i64);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Characters {
    /// The weight of the coordinate on `C_i` in which `M_i` is given.
    pub components: BTreeMap<usize, Character>,
    /// The weight of the coordinate in which `c_{k_s}` is given.
    pub births: BTreeMap<usize, Character>,
}

type Rows = [[i64; 2]; 2];

const IDENTITY_ROWS: Rows = [[1, 0], [0, 1]];

fn row(x: &Rows) -> Character {
    (x[0][0], x[0][1])
}

/// `y ↦ y / P_M(x)` for a polynomial of degree `m`.
fn feather_blowup(m: usize) -> ChartMatrix {
    ChartMatrix {
        k: 1,
        l: 0,
        p: -(m as i64),
        q: 1,
    }
}

/// Follows the coordinate changes of the blow-up algorithm, recording how
/// the torus acts on every coordinate used to place points.
pub fn torus_characters(p: &Presentation) -> Characters {
    let mut components = BTreeMap::new();
    let mut births = BTreeMap::new();
    let charts = gap_charts(p);
    let mut x = IDENTITY_ROWS;

    for (s, level) in p.levels().iter().enumerate() {
        components.insert(level.index, row(&x));
        x = feather_blowup(level.base_points.len()).apply(x);
        let Some(gap) = p.gaps().get(s) else { break };
        let next = &p.levels()[s + 1];
        births.insert(next.index, row(&x));

        let g = &charts[s];
        let base = ChartMatrix::SECOND.apply(x);
        let mut inner: BTreeMap<usize, Rows> =
            g.components.iter().map(|(&i, m)| (i, m.apply(base))).collect();
        let mut outer = g.outer.apply(base);
        for i in g.start + 1..g.end {
            components.insert(i, row(&inner[&i]));
            let m = gap.feathers.get(&i).map_or(0, Vec::len);
            if m == 0 {
                continue;
            }
            let blow = feather_blowup(m);
            let own = g.chart(i);
            for j in i + 1..=g.end {
                let t = ChartMatrix::transition(&own, &g.chart(j));
                let conj = t.compose(&blow).compose(&t.inverse());
                if j == g.end {
                    outer = conj.apply(outer);
                } else {
                    let xj = inner.get_mut(&j).expect("inner chart");
                    *xj = conj.apply(*xj);
                }
            }
        }
        x = outer;
    }
    Characters { components, births }
}

fn monomial(a: &CycNumber, b: &CycNumber, (p, q): Character) -> Result<CycNumber, AutGraphError> {
    Ok(a.pow(p)? * b.pow(q)?)
}

/// `(x, y) ↦ (a·x, b·y)` on every base point and birth point.
pub fn torus_action(p: &Presentation, a: &CycNumber, b: &CycNumber) -> Result<Presentation, AutGraphError> {
    if a.is_zero() || b.is_zero() {
        return Err(AutGraphError::ZeroScalar);
    }
    let chars = torus_characters(p);
    let scale = |i: usize, pts: &[CycNumber]| -> Result<Vec<CycNumber>, AutGraphError> {
        let f = monomial(a, b, chars.components[&i])?;
        Ok(pts.iter().map(|x| &f * x).collect())
    };
    let levels = p
        .levels()
        .iter()
        .map(|l| {
            Ok(OuterLevel {
                index: l.index,
                birth: match &l.birth {
                    Some(c) => Some(monomial(a, b, chars.births[&l.index])? * c),
                    None => None,
                },
                base_points: scale(l.index, &l.base_points)?,
            })
        })
        .collect::<Result<Vec<_>, AutGraphError>>()?;
    let gaps = p
        .gaps()
        .iter()
        .map(|g| {
            Ok(Gap {
                word: g.word.clone(),
                feathers: g
                    .feathers
                    .iter()
                    .map(|(&i, pts)| Ok((i, scale(i, pts)?)))
                    .collect::<Result<_, AutGraphError>>()?,
            })
        })
        .collect::<Result<Vec<_>, AutGraphError>>()?;
    Ok(p.with_levels(levels, gaps)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extdiv::GapWord;

    fn num(v: i64) -> CycNumber {
        CycNumber::from_integer(v, 1)
    }

    fn level(index: usize, birth: Option<i64>, points: &[i64]) -> OuterLevel {
        OuterLevel {
            index,
            birth: birth.map(num),
            base_points: points.iter().map(|&v| num(v)).collect(),
        }
    }

    fn three_levels() -> Presentation {
        Presentation::new(
            1,
            vec![level(2, None, &[1, 2]), level(6, Some(3), &[1]), level(10, Some(5), &[2])],
            vec![
                Gap {
                    word: GapWord::parse("R RN RNF").unwrap(),
                    feathers: [(4, vec![num(1)])].into(),
                },
                Gap {
                    word: GapWord::parse("R RN RNF").unwrap(),
                    feathers: [(8, vec![num(1)])].into(),
                },
            ],
        )
        .unwrap()
    }

    #[test]
    fn shift_at_first_level() {
        let p = three_levels();
        let s = jon_shift_action(&p, &num(7), 2).unwrap();
        assert_eq!(s.levels[0].base_points, Determinacy::Exact(vec![num(8), num(9)]));
        assert_eq!(s.levels[1].birth, Some(Determinacy::Exact(num(10))));
        assert_eq!(s.levels[1].base_points, Determinacy::Indeterminate);
        assert_eq!(s.levels[2].birth, Some(Determinacy::Indeterminate));
        assert_eq!(s.gaps, p.gaps());
        let back = s.shift(&num(-7), 2).unwrap();
        assert_eq!(back.levels[0].base_points, Determinacy::Exact(p.levels()[0].base_points.clone()));
        assert_eq!(back.levels[1].base_points, Determinacy::Indeterminate);
    }

    #[test]
    fn shift_boundaries() {
        let p = three_levels();
        let same = jon_shift_action(&p, &num(0), 3).unwrap();
        assert!(same.is_exact());
        assert_eq!(same.to_presentation().unwrap().unwrap(), p);
        let last = jon_shift_action(&p, &num(1), 4).unwrap();
        assert!(last.is_exact());
        assert_eq!(last.levels[2].base_points, Determinacy::Exact(vec![num(3)]));
        assert!(matches!(jon_shift_action(&p, &num(1), 5), Err(AutGraphError::InvalidLevel { .. })));
        assert!(matches!(jon_shift_action(&p, &num(1), 1), Err(AutGraphError::InvalidLevel { .. })));
    }

    #[test]
    fn torus_identity_and_composition() {
        let p = three_levels();
        assert_eq!(torus_action(&p, &num(1), &num(1)).unwrap(), p);
        let once = torus_action(&torus_action(&p, &num(2), &num(3)).unwrap(), &num(-1), &num(5)).unwrap();
        let direct = torus_action(&p, &num(-2), &num(15)).unwrap();
        assert_eq!(once, direct);
        assert_eq!(torus_action(&p, &num(0), &num(1)), Err(AutGraphError::ZeroScalar));
    }

    #[test]
    fn first_level_characters() {
        let p = three_levels();
        let ch = torus_characters(&p);
        // M_2 lives on the x-axis; after the two feathers y/P(x) has weight (-2, 1).
        assert_eq!(ch.components[&2], (1, 0));
        assert_eq!(ch.births[&6], (1, 0));
        // Gap base (x, y/x) has weights (1, 0) and (-3, 1). C_3 was created by
        // RN and its edge chart toward C_4 = RNF is S2·S1·S2 = [[2, -1], [-3, 2]].
        assert_eq!(ch.components[&3], (5, -1));
        let inner: Vec<Character> = (3..6).map(|i| ch.components[&i]).collect();
        for (x, y) in inner.iter().zip(inner.iter().skip(1)) {
            assert_ne!(x.0 * y.1 - x.1 * y.0, 0);
        }
    }
}
