//! Sparse single-photon linear maps.

use std::collections::BTreeMap;

use hbsa_state::{Label, XTag};
use num_complex::Complex64;

use crate::ElementError;

/// Image of one input label: a list of (output label, coefficient).
pub type Column = Vec<(Label, Complex64)>;

/// Anything that sends a single-photon label to a superposition of labels.
pub trait PhotonMap {
    fn column(&self, label: &Label) -> Result<Column, ElementError>;
}

/// Explicit column table. Labels without a column are left unchanged.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SinglePhotonMap {
    pub columns: BTreeMap<Label, Column>,
}

impl SinglePhotonMap {
    /// Tabulates `map` on every label of `domain`.
    pub fn tabulate<M: PhotonMap + ?Sized>(
        map: &M,
        domain: &[Label],
    ) -> Result<Self, ElementError> {
        let mut columns = BTreeMap::new();
        for l in domain {
            columns.insert(*l, merge(map.column(l)?));
        }
        Ok(SinglePhotonMap { columns })
    }

    /// Tabulates `map` on the labels of `candidates` it accepts.
    pub fn tabulate_domain<M: PhotonMap + ?Sized>(map: &M, candidates: &[Label]) -> Self {
        let columns = candidates
            .iter()
            .filter_map(|l| map.column(l).ok().map(|c| (*l, merge(c))))
            .collect();
        SinglePhotonMap { columns }
    }

    pub fn domain(&self) -> impl Iterator<Item = &Label> {
        self.columns.keys()
    }

    /// Largest deviation from an isometry: max over columns of `| |col|^2 - 1 |`
    /// and over column pairs of `|<col_i|col_j>|`.
    pub fn isometry_defect(&self) -> f64 {
        let cols: Vec<BTreeMap<Label, Complex64>> = self
            .columns
            .values()
            .map(|c| c.iter().copied().collect())
            .collect();
        let mut worst: f64 = 0.0;
        for (i, a) in cols.iter().enumerate() {
            let n: f64 = a.values().map(|c| c.norm_sqr()).sum();
            worst = worst.max((n - 1.0).abs());
            for b in &cols[i + 1..] {
                worst = worst.max(hbsa_state::state::inner(a, b).norm());
            }
        }
        worst
    }

    pub fn is_isometry(&self, tol: f64) -> bool {
        self.isometry_defect() <= tol
    }

    /// `other` after `self`.
    pub fn then<M: PhotonMap + ?Sized>(&self, other: &M) -> Result<Self, ElementError> {
        let mut columns = BTreeMap::new();
        for (l, col) in &self.columns {
            let mut out = Vec::new();
            for (mid, c) in col {
                for (o, d) in other.column(mid)? {
                    out.push((o, c * d));
                }
            }
            columns.insert(*l, merge(out));
        }
        Ok(SinglePhotonMap { columns })
    }

    /// Largest coefficient difference from the identity on the tabulated domain.
    pub fn distance_from_identity(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (l, col) in &self.columns {
            for (o, c) in col {
                let target = if o == l { 1.0 } else { 0.0 };
                worst = worst.max((c - Complex64::new(target, 0.0)).norm());
            }
            if !col.iter().any(|(o, _)| o == l) {
                worst = worst.max(1.0);
            }
        }
        worst
    }

    /// Largest coefficient difference between two tables with the same domain.
    pub fn distance(&self, other: &Self) -> f64 {
        let mut worst: f64 = 0.0;
        for l in self.columns.keys().chain(other.columns.keys()) {
            let a: BTreeMap<Label, Complex64> = self
                .columns
                .get(l)
                .map(|c| c.iter().copied().collect())
                .unwrap_or_default();
            let b: BTreeMap<Label, Complex64> = other
                .columns
                .get(l)
                .map(|c| c.iter().copied().collect())
                .unwrap_or_default();
            for k in a.keys().chain(b.keys()) {
                let x = a.get(k).copied().unwrap_or_default();
                let y = b.get(k).copied().unwrap_or_default();
                worst = worst.max((x - y).norm());
            }
        }
        worst
    }
}

impl PhotonMap for SinglePhotonMap {
    fn column(&self, label: &Label) -> Result<Column, ElementError> {
        Ok(self
            .columns
            .get(label)
            .cloned()
            .unwrap_or_else(|| vec![(*label, Complex64::new(1.0, 0.0))]))
    }
}

/// Undoes the frequency beam splitter: clears the frequency-path tag.
pub struct FbsInverse;

impl PhotonMap for FbsInverse {
    fn column(&self, label: &Label) -> Result<Column, ElementError> {
        let expected = match label.freq {
            hbsa_state::Freq::W1 => XTag::X1,
            hbsa_state::Freq::W2 => XTag::X2,
        };
        if label.xtag != expected {
            return Err(ElementError::Domain {
                element: "fbs inverse".into(),
                label: *label,
                reason: "frequency path does not match frequency",
            });
        }
        Ok(vec![(
            label.with_xtag(XTag::Unset),
            Complex64::new(1.0, 0.0),
        )])
    }
}

fn merge(col: Column) -> Column {
    let mut acc: BTreeMap<Label, Complex64> = BTreeMap::new();
    for (l, c) in col {
        *acc.entry(l).or_default() += c;
    }
    acc.into_iter()
        .filter(|(_, c)| c.norm() >= hbsa_state::ZERO_THRESHOLD)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::{fbs, fs, hwp};
    use hbsa_state::DelayTag;

    fn labels() -> Vec<Label> {
        Label::enumerate(&[DelayTag::ZERO, DelayTag::T0])
    }

    #[test]
    fn hwp_table_is_isometry() {
        let t = SinglePhotonMap::tabulate(&hwp(22.5), &labels()).unwrap();
        assert!(t.is_isometry(1e-12));
    }

    #[test]
    fn fbs_then_inverse_is_identity() {
        let t = SinglePhotonMap::tabulate_domain(&fbs(), &labels());
        assert_eq!(t.columns.len(), labels().len() / 3);
        let round = t.then(&FbsInverse).unwrap();
        assert!(round.distance_from_identity() < 1e-15);
    }

    #[test]
    fn fs_twice_is_identity() {
        let t = SinglePhotonMap::tabulate(&fs(), &labels()).unwrap();
        assert!(t.then(&fs()).unwrap().distance_from_identity() < 1e-15);
    }

    #[test]
    fn untabulated_labels_pass_through() {
        let t = SinglePhotonMap::default();
        let l = labels()[5];
        assert_eq!(t.column(&l).unwrap(), vec![(l, Complex64::new(1.0, 0.0))]);
    }
}
