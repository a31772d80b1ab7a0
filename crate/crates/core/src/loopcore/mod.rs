//! Loops as Latin squares with neutral element 1.

mod properties;
mod simplicity;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permkernel::{PermGroup, Permutation};

pub use properties::{InnerGenerators, LoopProperties};

/// A Latin square whose first row and column are the identity.
/// Internally 0-based: `mul(i, j)` is `i * j` with element 0 neutral.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(try_from = "LoopFile", into = "LoopFile")]
pub struct LoopTable {
    order: usize,
    cells: Vec<u16>,
}

/// External form: `{"order": d, "table": [[...], ...]}`, 1-based entries.
#[derive(Serialize, Deserialize)]
struct LoopFile {
    order: usize,
    table: Vec<Vec<usize>>,
}

impl TryFrom<LoopFile> for LoopTable {
    type Error = Error;

    fn try_from(file: LoopFile) -> Result<Self> {
        if file.table.len() != file.order {
            return Err(Error::InvalidLoop(format!(
                "order {} but {} rows",
                file.order,
                file.table.len()
            )));
        }
        LoopTable::from_rows(&file.table)
    }
}

impl From<LoopTable> for LoopFile {
    fn from(table: LoopTable) -> Self {
        LoopFile {
            order: table.order,
            table: table.rows_one_based(),
        }
    }
}

impl LoopTable {
    /// Validates a 1-based table: square, Latin, and `1` neutral.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let d = rows.len();
        let mut cells = Vec::with_capacity(d * d);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != d {
                return Err(Error::InvalidLoop(format!(
                    "row {} has {} entries, expected {d}",
                    i + 1,
                    row.len()
                )));
            }
            for &v in row {
                if v == 0 || v > d {
                    return Err(Error::InvalidLoop(format!(
                        "entry {v} in row {} outside 1..{d}",
                        i + 1
                    )));
                }
                cells.push((v - 1) as u16);
            }
        }
        Self::from_cells(d, cells)
    }

    /// Validates a 0-based row-major table.
    pub(crate) fn from_cells(order: usize, cells: Vec<u16>) -> Result<Self> {
        if order == 0 || order > Permutation::MAX_DEGREE {
            return Err(Error::InvalidLoop(format!("unsupported order {order}")));
        }
        if cells.len() != order * order || cells.iter().any(|&v| v as usize >= order) {
            return Err(Error::InvalidLoop("malformed cell array".into()));
        }
        let table = Self { order, cells };
        for i in 0..order {
            let mut row_seen = vec![false; order];
            let mut col_seen = vec![false; order];
            for j in 0..order {
                if std::mem::replace(&mut row_seen[table.mul(i, j)], true) {
                    return Err(Error::InvalidLoop(format!(
                        "row {} repeats entry {}",
                        i + 1,
                        table.mul(i, j) + 1
                    )));
                }
                if std::mem::replace(&mut col_seen[table.mul(j, i)], true) {
                    return Err(Error::InvalidLoop(format!(
                        "column {} repeats entry {}",
                        i + 1,
                        table.mul(j, i) + 1
                    )));
                }
            }
            if table.mul(0, i) != i || table.mul(i, 0) != i {
                return Err(Error::InvalidLoop(
                    "row 1 and column 1 must be the identity (1 is the neutral element)".into(),
                ));
            }
        }
        Ok(table)
    }

    /// The loop whose right translation by `j` is `rights[j]`:
    /// `i * j = i rights[j]`.
    pub fn from_right_translations(rights: &[Permutation]) -> Result<Self> {
        let d = rights.len();
        let mut cells = vec![0u16; d * d];
        for (j, r) in rights.iter().enumerate() {
            if r.degree() != d {
                return Err(Error::DegreeMismatch {
                    expected: d,
                    found: r.degree(),
                });
            }
            for i in 0..d {
                cells[i * d + j] = r.image(i) as u16;
            }
        }
        Self::from_cells(d, cells)
    }

    /// Cayley table of `Z_n` with `0` neutral.
    pub fn cyclic(n: usize) -> Self {
        let cells = (0..n * n).map(|k| ((k / n + k % n) % n) as u16).collect();
        Self::from_cells(n, cells).expect("cyclic group table")
    }

    /// Direct product; element `(a, b)` is `a * other.order() + b`.
    pub fn direct_product(&self, other: &LoopTable) -> Self {
        let (m, n) = (self.order, other.order);
        let d = m * n;
        let mut cells = vec![0u16; d * d];
        for x in 0..d {
            for y in 0..d {
                let a = self.mul(x / n, y / n);
                let b = other.mul(x % n, y % n);
                cells[x * d + y] = (a * n + b) as u16;
            }
        }
        Self::from_cells(d, cells).expect("product of loops")
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    /// `i * j` for 0-based elements.
    #[inline]
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.cells[i * self.order + j] as usize
    }

    pub fn cells(&self) -> &[u16] {
        &self.cells
    }

    pub fn rows_one_based(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|i| (0..self.order).map(|j| self.mul(i, j) + 1).collect())
            .collect()
    }

    /// `R_x: y -> y * x`.
    pub fn right_translation(&self, x: usize) -> Permutation {
        Permutation::from_images((0..self.order).map(|y| self.mul(y, x)).collect())
            .expect("Latin columns")
    }

    /// `L_x: y -> x * y`.
    pub fn left_translation(&self, x: usize) -> Permutation {
        Permutation::from_images((0..self.order).map(|y| self.mul(x, y)).collect())
            .expect("Latin rows")
    }

    /// All right and all left translations, indexed by element.
    pub fn translations(&self) -> (Vec<Permutation>, Vec<Permutation>) {
        let rights = (0..self.order).map(|x| self.right_translation(x)).collect();
        let lefts = (0..self.order).map(|x| self.left_translation(x)).collect();
        (rights, lefts)
    }

    /// `(RMlt, Mlt)`.
    pub fn mult_groups(&self) -> (PermGroup, PermGroup) {
        let (rights, lefts) = self.translations();
        let rmlt = PermGroup::generated_by(self.order, &rights);
        let mut all = rights;
        all.extend(lefts);
        let mlt = PermGroup::generated_by(self.order, &all);
        (rmlt, mlt)
    }

    /// `x \ y`, the solution `z` of `x * z = y`.
    pub fn left_div(&self, x: usize, y: usize) -> usize {
        (0..self.order).find(|&z| self.mul(x, z) == y).expect("Latin row")
    }

    /// `y / x`, the solution `z` of `z * x = y`.
    pub fn right_div(&self, y: usize, x: usize) -> usize {
        (0..self.order).find(|&z| self.mul(z, x) == y).expect("Latin column")
    }

    /// True iff `(i * j) p = (i p) * (j p)` for all `i, j`.
    pub fn is_automorphism(&self, p: &Permutation) -> bool {
        p.degree() == self.order
            && (0..self.order).all(|i| {
                (0..self.order).all(|j| p.image(self.mul(i, j)) == self.mul(p.image(i), p.image(j)))
            })
    }

    /// The translation criterion: `p` is an automorphism iff
    /// `R_i^p = R_{i p}` for every `i`.
    pub fn is_automorphism_by_translations(&self, p: &Permutation) -> bool {
        p.degree() == self.order
            && (0..self.order)
                .all(|i| self.right_translation(i).conjugate_by(p) == self.right_translation(p.image(i)))
    }

    /// The table transported along `phi`: `(i phi) * (j phi) = (i * j) phi`.
    /// `phi` must fix the neutral element.
    pub fn relabel(&self, phi: &Permutation) -> Result<Self> {
        if phi.degree() != self.order {
            return Err(Error::DegreeMismatch {
                expected: self.order,
                found: phi.degree(),
            });
        }
        if !phi.fixes(0) {
            return Err(Error::InvalidLoop("relabeling must fix the neutral element".into()));
        }
        let d = self.order;
        let mut cells = vec![0u16; d * d];
        for i in 0..d {
            for j in 0..d {
                cells[phi.image(i) * d + phi.image(j)] = phi.image(self.mul(i, j)) as u16;
            }
        }
        Self::from_cells(d, cells)
    }
}
