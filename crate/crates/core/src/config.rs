/// Numeric tolerances shared by every module.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Allowed `|ad − bc − 1|` after renormalization.
    pub det: f64,
    /// Allowed drift of distances under an isometry.
    pub iso: f64,
    /// Band around `|tr| = 2` treated as parabolic.
    pub class: f64,
    /// Distance below which a segment touching a line counts as crossing.
    pub cross: f64,
    /// Allowed residual of the surface-group relation.
    pub rel: f64,
    /// Allowed error of reconstructed Fenchel–Nielsen lengths.
    pub len: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            det: 1e-12,
            iso: 1e-9,
            class: 1e-9,
            cross: 1e-10,
            rel: 1e-8,
            len: 1e-6,
        }
    }
}

impl Tolerances {
    pub fn is_valid(&self) -> bool {
        [self.det, self.iso, self.class, self.cross, self.rel, self.len]
            .iter()
            .all(|t| t.is_finite() && *t > 0.0)
    }
}

/// Search and sampling parameters for a decomposition run.
#[derive(Debug, Clone, PartialEq)]
pub struct Settings {
    pub tolerances: Tolerances,
    /// Cap on the number of group elements any single enumeration may visit.
    pub budget: usize,
    /// Number of low-discrepancy samples of the fundamental domain.
    pub samples: usize,
    /// Start point of the procedure; defaults to the fundamental-domain centroid.
    pub base_point: Option<(f64, f64)>,
    /// Offset into the sample sequence, so different seeds give different but
    /// reproducible sample sets.
    pub seed: u64,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            tolerances: Tolerances::default(),
            budget: 10_000_000,
            samples: 3000,
            base_point: None,
            seed: 0,
        }
    }
}
