use crate::words::{Letter, Word};

/// Letter-count vectors modulo the lattice spanned by the relator vectors.
///
/// The lattice is kept as a row-style Hermite normal form, which makes the
/// reduced vector a canonical representative of its coset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianInvariant {
    dim: usize,
    // (pivot column, row) with strictly increasing pivots and positive pivot entries
    basis: Vec<(usize, Vec<i64>)>,
}

impl AbelianInvariant {
    pub fn new(dim: usize, relators: &[Word]) -> Self {
        let rows: Vec<Vec<i64>> = relators.iter().map(|r| count_vector(dim, r)).collect();
        AbelianInvariant {
            dim,
            basis: hermite(dim, rows),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Reduced letter-count vector of `w`.
    pub fn vector(&self, w: &[Letter]) -> Vec<i64> {
        self.reduce(count_vector(self.dim, w))
    }

    pub fn reduce(&self, mut v: Vec<i64>) -> Vec<i64> {
        for (col, row) in &self.basis {
            let q = v[*col].div_euclid(row[*col]);
            if q != 0 {
                for (x, r) in v.iter_mut().zip(row) {
                    *x -= q * r;
                }
            }
        }
        v
    }

    pub fn separates(&self, u: &[Letter], v: &[Letter]) -> bool {
        self.vector(u) != self.vector(v)
    }
}

pub fn count_vector(dim: usize, w: &[Letter]) -> Vec<i64> {
    let mut v = vec![0i64; dim];
    for l in w {
        v[l.index()] += 1;
    }
    v
}

fn hermite(dim: usize, mut rows: Vec<Vec<i64>>) -> Vec<(usize, Vec<i64>)> {
    let mut basis: Vec<(usize, Vec<i64>)> = Vec::new();
    for col in 0..dim {
        // gcd-combine every remaining row's entry in this column into one pivot row
        let mut pivot: Option<Vec<i64>> = None;
        let mut rest = Vec::new();
        for row in rows.drain(..) {
            if row[col] == 0 {
                rest.push(row);
                continue;
            }
            match pivot.take() {
                None => pivot = Some(row),
                Some(p) => {
                    let (g, x, y) = ext_gcd(p[col], row[col]);
                    let (a, b) = (p[col] / g, row[col] / g);
                    let new_p: Vec<i64> = p.iter().zip(&row).map(|(s, t)| x * s + y * t).collect();
                    let other: Vec<i64> = p.iter().zip(&row).map(|(s, t)| b * s - a * t).collect();
                    debug_assert_eq!(other[col], 0);
                    rest.push(other);
                    pivot = Some(new_p);
                }
            }
        }
        rows = rest;
        if let Some(mut p) = pivot {
            if p[col] < 0 {
                p.iter_mut().for_each(|x| *x = -*x);
            }
            // reduce earlier rows above the new pivot
            for (_, row) in basis.iter_mut() {
                let q = row[col].div_euclid(p[col]);
                if q != 0 {
                    for (x, y) in row.iter_mut().zip(&p) {
                        *x -= q * y;
                    }
                }
            }
            basis.push((col, p));
        }
    }
    basis
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}
