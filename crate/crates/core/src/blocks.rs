//! Blocks of decomposition matrices, their defects, adjustment matrices
//! and the comparison of radicals between characteristic `ell` and `zeta_e`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::gram::GramMatrix;
use crate::hecke::{phi_e_defect, SchurElement};
use crate::meataxe::DecompMatrix;
use crate::rings::field::Rationals;
use crate::rings::matrix::{self, Matrix};
use crate::specrank::{check_modular_target, rank_at_modular, rank_at_zeta};
use crate::weyl::WeylType;

/// One block: labels ordered by `a` and then by row order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub labels: Vec<String>,
    pub defect: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPartition {
    pub e: u64,
    /// `None` for the characteristic-zero specialization.
    pub ell: Option<u64>,
    pub blocks: Vec<Block>,
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Connected components of the graph on rows where two rows are joined if
/// they share a nonzero column.
pub fn brauer_blocks(d: &DecompMatrix) -> BlockPartition {
    let n = d.rows.len();
    let mut parent: Vec<usize> = (0..n).collect();
    for j in 0..d.columns.len() {
        let hit: Vec<usize> = (0..n).filter(|&i| d.entries[i][j] > 0).collect();
        for w in hit.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let key = |i: usize| (d.rows[i].a.unwrap_or(u32::MAX), i);
    let roots: Vec<usize> = (0..n).map(|i| find(&mut parent, i)).collect();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        match groups.iter_mut().find(|g| roots[g[0]] == roots[i]) {
            Some(g) => g.push(i),
            None => groups.push(vec![i]),
        }
    }
    for g in groups.iter_mut() {
        g.sort_by_key(|&i| key(i));
    }
    groups.sort_by_key(|g| key(g[0]));
    BlockPartition {
        e: d.e,
        ell: Some(d.ell),
        blocks: groups.into_iter().map(|g| Block { labels: g.iter().map(|&i| d.rows[i].name.clone()).collect(), defect: None }).collect(),
    }
}

/// Fills in the `Phi_e`-defect of each block; it must be constant on blocks.
pub fn block_defects(p: &BlockPartition, schur: &[SchurElement], e: u64) -> Result<BlockPartition> {
    let mut out = p.clone();
    for b in out.blocks.iter_mut() {
        let mut defects = Vec::new();
        for l in &b.labels {
            let s = schur.iter().find(|s| &s.label == l).ok_or_else(|| Error::MissingAInvariant(l.clone()))?;
            defects.push(phi_e_defect(s, e));
        }
        if defects.windows(2).any(|w| w[0] != w[1]) {
            let detail = b.labels.iter().zip(&defects).map(|(l, d)| format!("{l}:{d}")).collect::<Vec<_>>().join(" ");
            return Err(Error::DefectMismatch(detail));
        }
        b.defect = defects.first().copied();
    }
    Ok(out)
}

/// Checks the block shapes: defect-0 blocks are exactly the singletons, and
/// a defect-1 block has distinct `a`-values and a two-diagonal
/// decomposition matrix on its last `n - 1` columns.
pub fn check_block_structure(p: &BlockPartition, d: &DecompMatrix) -> Result<()> {
    let bad = |m: String| Err(Error::VerificationFailed(m));
    for b in &p.blocks {
        let defect = b.defect.ok_or_else(|| Error::VerificationFailed("block defects not computed".into()))?;
        if (defect == 0) != (b.labels.len() == 1) {
            return bad(format!("block {:?} has defect {defect}", b.labels));
        }
        if defect != 1 {
            continue;
        }
        let rows: Vec<usize> = b.labels.iter().map(|l| d.row_of(l).unwrap()).collect();
        let a: Vec<u32> = rows.iter().map(|&i| d.rows[i].a.unwrap()).collect();
        if a.windows(2).any(|w| w[0] >= w[1]) {
            return bad(format!("defect-1 block {:?} has repeated a-values", b.labels));
        }
        let n = rows.len();
        for (i, &r) in rows.iter().enumerate() {
            for (j, lj) in b.labels.iter().enumerate() {
                let expected = usize::from(j < n - 1 && (i == j || i == j + 1));
                let got = d.column_of(lj).map_or(0, |c| d.entries[r][c]);
                if got != expected {
                    return bad(format!("defect-1 block {:?}: entry ({}, {lj}) is {got}", b.labels, b.labels[i]));
                }
            }
        }
    }
    Ok(())
}

/// Matrix `A` with `D_xi = D_zeta A`; rows are columns of `D_zeta`,
/// columns are columns of `D_xi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjustmentMatrix {
    pub rows: Vec<String>,
    pub columns: Vec<String>,
    pub entries: Vec<Vec<u64>>,
}

impl AdjustmentMatrix {
    pub fn is_identity(&self) -> bool {
        self.rows == self.columns
            && self.entries.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, &x)| x == u64::from(i == j)))
    }
}

fn to_q(d: &DecompMatrix) -> Matrix<BigRational> {
    Matrix::from_fn(d.rows.len(), d.columns.len(), |i, j| BigRational::from_integer(BigInt::from(d.entries[i][j])))
}

/// Solves `D_xi = D_zeta A` and checks integrality, nonnegativity, the unit
/// diagonal and that `a_{nu,mu} != 0` forces `nu = mu` or `a_mu < a_nu`.
pub fn adjustment_matrix(d_xi: &DecompMatrix, d_zeta: &DecompMatrix) -> Result<AdjustmentMatrix> {
    let labels = |d: &DecompMatrix| d.rows.iter().map(|r| r.name.clone()).collect::<Vec<_>>();
    if labels(d_xi) != labels(d_zeta) {
        return Err(Error::NoSolution("row labels differ".into()));
    }
    let x = matrix::solve(&Rationals, &to_q(d_zeta), &to_q(d_xi))?
        .ok_or_else(|| Error::NoSolution("D_xi is not in the column span of D_zeta".into()))?;
    let mut entries = vec![vec![0u64; d_xi.columns.len()]; d_zeta.columns.len()];
    for (nu, row) in entries.iter_mut().enumerate() {
        for (mu, e) in row.iter_mut().enumerate() {
            let v = x.get(nu, mu);
            let (nu_l, mu_l) = (&d_zeta.columns[nu], &d_xi.columns[mu]);
            if !v.is_integer() || v.is_negative() {
                return Err(Error::NegativeEntry(format!("a({nu_l}, {mu_l}) = {v}")));
            }
            *e = v.to_integer().to_u64().unwrap();
            let a_of = |l: &str| d_xi.rows[d_xi.row_of(l).unwrap()].a;
            if nu_l == mu_l && *e != 1 {
                return Err(Error::NoSolution(format!("a({nu_l}, {nu_l}) = {e}")));
            }
            if nu_l != mu_l && *e != 0 && a_of(mu_l) >= a_of(nu_l) {
                return Err(Error::NoSolution(format!("a({nu_l}, {mu_l}) = {e} violates the a-ordering")));
            }
        }
    }
    for mu in &d_xi.columns {
        if !d_zeta.columns.contains(mu) {
            return Err(Error::NoSolution(format!("{mu} is not a column of D_zeta")));
        }
    }
    Ok(AdjustmentMatrix { rows: d_zeta.columns.clone(), columns: d_xi.columns.clone(), entries })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JamesRow {
    pub label: String,
    pub dim: usize,
    pub corank_zeta: usize,
    pub corank_ell: usize,
}

impl JamesRow {
    pub fn agrees(&self) -> bool {
        self.corank_zeta == self.corank_ell
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JamesReport {
    pub e: u64,
    pub ell: u64,
    pub rows: Vec<JamesRow>,
}

impl JamesReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(JamesRow::agrees)
    }
}

/// Compares the corank of every Gram matrix at `zeta_{2e}` and in
/// characteristic `ell`.
pub fn james_verdict(grams: &[GramMatrix], t: &WeylType, e: u64, ell: u64) -> Result<JamesReport> {
    check_modular_target(t, e, ell)?;
    let rows = grams
        .iter()
        .map(|g| {
            let z = rank_at_zeta(g, e);
            let m = rank_at_modular(g, e, ell)?;
            Ok(JamesRow { label: g.label.clone(), dim: g.dim(), corank_zeta: z.corank(), corank_ell: m.corank() })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(JamesReport { e, ell, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::IrrLabel;

    fn dm(rows: &[(&str, u32, usize)], cols: &[&str], col_dims: &[usize], entries: Vec<Vec<usize>>) -> DecompMatrix {
        DecompMatrix {
            e: 2,
            ell: 7,
            rows: rows.iter().map(|(n, a, d)| IrrLabel { name: n.to_string(), dim: *d, a: Some(*a), f: None }).collect(),
            columns: cols.iter().map(|c| c.to_string()).collect(),
            column_dims: col_dims.to_vec(),
            entries,
        }
    }

    #[test]
    fn identity_gives_singletons() {
        let d = dm(&[("x", 0, 1), ("y", 1, 1)], &["x", "y"], &[1, 1], vec![vec![1, 0], vec![0, 1]]);
        let p = brauer_blocks(&d);
        assert_eq!(p.blocks.len(), 2);
        let a = adjustment_matrix(&d, &d).unwrap();
        assert!(a.is_identity());
    }

    #[test]
    fn two_diagonal_block() {
        let d = dm(&[("x", 0, 1), ("y", 1, 2), ("z", 3, 1)], &["x", "y"], &[1, 1], vec![vec![1, 0], vec![1, 1], vec![0, 1]]);
        let mut p = brauer_blocks(&d);
        assert_eq!(p.blocks.len(), 1);
        p.blocks[0].defect = Some(1);
        check_block_structure(&p, &d).unwrap();
        let mut bad = d.clone();
        bad.entries[2] = vec![1, 0];
        p = brauer_blocks(&bad);
        p.blocks[0].defect = Some(1);
        assert!(check_block_structure(&p, &bad).is_err());
    }

    #[test]
    fn nontrivial_adjustment() {
        let zeta =
            dm(&[("x", 0, 1), ("y", 1, 2), ("z", 2, 1)], &["x", "y", "z"], &[1, 1, 1], vec![vec![1, 0, 0], vec![1, 1, 0], vec![0, 0, 1]]);
        let xi = dm(&[("x", 0, 1), ("y", 1, 2), ("z", 2, 1)], &["x", "y"], &[1, 1], vec![vec![1, 0], vec![1, 1], vec![0, 1]]);
        let a = adjustment_matrix(&xi, &zeta).unwrap();
        assert_eq!(a.entries, vec![vec![1, 0], vec![0, 1], vec![0, 1]]);
        assert!(!a.is_identity());
        let neg = dm(&[("x", 0, 1), ("y", 1, 2), ("z", 2, 1)], &["x", "y"], &[1, 1], vec![vec![1, 0], vec![0, 1], vec![0, 1]]);
        assert!(matches!(adjustment_matrix(&neg, &zeta), Err(Error::NegativeEntry(_))));
    }
}
