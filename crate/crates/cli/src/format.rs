//! JSON file formats for surfaces, decompositions and traces.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use pants_core::algorithm::{Certificate, PantsDecomposition, StepRecord};
use pants_core::hyp::{HPoint, Isometry};
use pants_core::surface::{build_pants_graph, fn_to_group, CurveClass, FNCoordinates, FuchsianGroup, GraphShape};
use pants_core::{Tolerances, Word};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

/// Rounds to nine significant digits, the precision of every number we write.
pub fn sig9(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    format!("{x:.8e}").parse::<f64>().map_or(x, |v| v + 0.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceFile {
    pub genus: u32,
    pub graph: Vec<[usize; 4]>,
    pub lengths: Vec<f64>,
    pub twists: Vec<f64>,
}

impl SurfaceFile {
    pub fn rounded(mut self) -> Self {
        self.lengths.iter_mut().for_each(|x| *x = sig9(*x));
        self.twists.iter_mut().for_each(|x| *x = sig9(*x));
        self
    }

    fn check(&self) -> Result<()> {
        let n = 3 * self.genus as usize;
        if self.genus < 2 {
            return Err(CliError::Input("genus must be at least 2".into()));
        }
        if self.graph.len() != n - 3 || self.lengths.len() != n - 3 || self.twists.len() != n - 3 {
            return Err(CliError::Input(format!(
                "genus {} needs {} graph edges, lengths and twists",
                self.genus,
                n - 3
            )));
        }
        if let Some(l) = self.lengths.iter().find(|l| !l.is_finite() || **l <= 0.0) {
            return Err(CliError::Input(format!("length {l} is not a positive finite number")));
        }
        if self.twists.iter().any(|t| !t.is_finite()) {
            return Err(CliError::Input("twists must be finite".into()));
        }
        Ok(())
    }

    pub fn to_group(&self, tol: &Tolerances) -> Result<FuchsianGroup> {
        self.check()?;
        let pg = build_pants_graph(self.genus, GraphShape::Custom(self.graph.clone()))?;
        let fnc = FNCoordinates::new(self.lengths.clone(), self.twists.clone())?;
        Ok(fn_to_group(&pg, &fnc, tol)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveEntry {
    pub word: Vec<i32>,
    pub length: f64,
}

impl From<&CurveClass> for CurveEntry {
    fn from(c: &CurveClass) -> Self {
        Self {
            word: c.word.letters().to_vec(),
            length: sig9(c.length),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CertificateEntry {
    pub bers_bound: f64,
    pub max_length: f64,
    pub conditional: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecompositionFile {
    pub genus: u32,
    pub curves: Vec<CurveEntry>,
    #[serde(default)]
    pub pants: Vec<[usize; 3]>,
    pub certificate: Option<CertificateEntry>,
}

impl From<&PantsDecomposition> for DecompositionFile {
    fn from(pd: &PantsDecomposition) -> Self {
        Self {
            genus: pd.genus,
            curves: pd.curves.iter().map(CurveEntry::from).collect(),
            pants: pd.pants.clone(),
            certificate: Some(CertificateEntry {
                bers_bound: sig9(pd.certificate.bers_bound),
                max_length: sig9(pd.certificate.max_length),
                conditional: pd.certificate.conditional,
            }),
        }
    }
}

impl DecompositionFile {
    /// Checks indices against `group` and rebuilds the decomposition. Stored
    /// lengths are advisory: every curve is re-evaluated from its word, and a
    /// word without a closed geodesic keeps its stored length so the verifier
    /// can reject it.
    pub fn to_decomposition(&self, group: &FuchsianGroup) -> Result<PantsDecomposition> {
        if self.genus != group.genus {
            return Err(CliError::Input(format!(
                "decomposition is for genus {} but the surface has genus {}",
                self.genus, group.genus
            )));
        }
        let gens = group.generators.len() as i32;
        let mut curves = Vec::with_capacity(self.curves.len());
        for c in &self.curves {
            if let Some(l) = c.word.iter().find(|&&l| l == 0 || l.abs() > gens) {
                return Err(CliError::Input(format!("generator index {l} out of range 1..={gens}")));
            }
            let word = Word::new(c.word.clone());
            curves.push(CurveClass::new(group, &word).unwrap_or(CurveClass {
                word,
                holonomy: Isometry::new(1.0, 0.0, 0.0, 1.0)?,
                length: c.length,
            }));
        }
        if self.pants.iter().flatten().any(|&i| i >= curves.len()) {
            return Err(CliError::Input("pants refers to a missing curve".into()));
        }
        let lengths: Vec<f64> = curves.iter().map(|c| c.length).collect();
        let max_length = lengths.iter().copied().fold(0.0, f64::max);
        let certificate = match self.certificate {
            Some(c) => Certificate {
                bers_bound: c.bers_bound,
                max_length,
                conditional: c.conditional,
            },
            None => Certificate {
                bers_bound: pants_core::bounds::bers_bound(group.genus)?,
                max_length,
                conditional: false,
            },
        };
        Ok(PantsDecomposition {
            genus: self.genus,
            curves,
            pants: self.pants.clone(),
            lengths,
            certificate,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub kind: String,
    pub new_curves: Vec<CurveEntry>,
    pub boundary_len_before: f64,
    pub boundary_len_after: f64,
    pub point: Option<[f64; 2]>,
    pub point_distance: Option<f64>,
    pub loop_length: Option<f64>,
    pub arc_length: Option<f64>,
    pub arc_ends: Option<[f64; 2]>,
    pub hexagon_length: Option<f64>,
}

impl From<&StepRecord> for TraceEntry {
    fn from(r: &StepRecord) -> Self {
        let opt = |x: Option<f64>| x.map(sig9);
        Self {
            kind: r.kind.as_str().to_string(),
            new_curves: r.new_curves.iter().map(CurveEntry::from).collect(),
            boundary_len_before: sig9(r.boundary_len_before),
            boundary_len_after: sig9(r.boundary_len_after),
            point: r.point.map(|p: HPoint| [sig9(p.x), sig9(p.y)]),
            point_distance: opt(r.point_distance),
            loop_length: opt(r.loop_length),
            arc_length: opt(r.arc_length),
            arc_ends: r.arc_ends.map(|(a, b)| [sig9(a), sig9(b)]),
            hexagon_length: opt(r.hexagon_length),
        }
    }
}

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn parse_json<T: for<'de> Deserialize<'de>>(path: &Path, text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|source| CliError::Parse {
        path: path.display().to_string(),
        source,
    })
}

pub fn read_surface(path: &Path) -> Result<SurfaceFile> {
    parse_json(path, &read_text(path)?)
}

/// Reads a decomposition; a blank file stands for one with no curves.
pub fn read_decomposition(path: &Path, genus: u32) -> Result<DecompositionFile> {
    let text = read_text(path)?;
    if text.trim().is_empty() {
        return Ok(DecompositionFile {
            genus,
            curves: Vec::new(),
            pants: Vec::new(),
            certificate: None,
        });
    }
    parse_json(path, &text)
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

/// Writes `bytes` next to `path` and renames into place, so readers never
/// see a half-written file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let io = |source| CliError::Io {
        path: path.display().to_string(),
        source,
    };
    let mut tmp = PathBuf::from(path);
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    tmp.set_file_name(format!(".{name}.{}.tmp", std::process::id()));
    let res = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if res.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    res.map_err(io)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_significant_digits() {
        assert_eq!(sig9(3.0571418389619963), 3.05714184);
        assert_eq!(sig9(-0.0), 0.0);
        assert!(sig9(-0.0).is_sign_positive());
        assert_eq!(sig9(1234567890123.0), 1234567890000.0);
        assert_eq!(sig9(f64::INFINITY), f64::INFINITY);
    }

    #[test]
    fn surface_round_trip() {
        let s = SurfaceFile {
            genus: 2,
            graph: vec![[0, 1, 1, 0], [1, 1, 0, 0], [0, 2, 1, 2]],
            lengths: vec![3.0, 2.5, 1.9],
            twists: vec![0.1, 0.0, -0.4],
        };
        let text = to_json(&s);
        let keys: Vec<usize> = ["genus", "graph", "lengths", "twists"].iter().map(|k| text.find(k).unwrap()).collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        let back: SurfaceFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
        assert!(back.to_group(&Tolerances::default()).is_ok());
    }
}
