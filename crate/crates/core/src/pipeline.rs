//! End-to-end run for one `(e, ell)`: chop the specialized W-graph modules,
//! build the decomposition matrix, compare with a characteristic-zero
//! surrogate, and report blocks, adjustment matrix and the radical verdict.

use std::fmt::{self, Write as _};

use crate::blocks::{
    adjustment_matrix, block_defects, brauer_blocks, check_block_structure, james_verdict, AdjustmentMatrix, Block, BlockPartition,
    JamesReport,
};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::gram::GramMatrix;
use crate::hecke::{check_against_table, labels_from_schur, schur_elements, semisimple_at, SchurElement};
use crate::meataxe::{decomposition_matrix, DecompMatrix, FModule, DEFAULT_BUDGET};
use crate::rings::field::is_prime;
use crate::specrank::{bad_prime_set, check_modular_target, modular_target, rank_at_modular, rank_at_zeta};
use crate::weyl::{is_e_regular, IrrLabel, WeylType};
use crate::wgraph::{build_generator_matrices, GenMatrices, WGraph};

/// Everything the pipeline needs about one Weyl group.
#[derive(Clone, Debug)]
pub struct Dataset {
    pub weyl: WeylType,
    /// One label per representation, in the same order as `reps` and `grams`.
    pub labels: Vec<IrrLabel>,
    pub reps: Vec<GenMatrices>,
    pub grams: Vec<GramMatrix>,
    /// Whether `grams` are cellular forms, whose rank vanishes exactly off
    /// the canonical set. Primitive forms are only compared on it.
    pub cellular: bool,
    pub schur: Option<Vec<SchurElement>>,
}

impl Dataset {
    /// The complete G2 dataset with reference cellular Gram matrices.
    pub fn g2() -> Result<Self> {
        let weyl: WeylType = "G2".parse()?;
        let reps: Vec<GenMatrices> = fixtures::g2_wgraphs().iter().map(build_generator_matrices).collect();
        let schur = schur_elements(&reps, &weyl)?;
        Ok(Dataset {
            labels: labels_from_schur(&schur),
            weyl,
            reps,
            grams: fixtures::g2_cellular_grams(),
            cellular: true,
            schur: Some(schur),
        })
    }

    /// A dataset from W-graphs, their Gram matrices and an invariants table.
    /// Schur elements are computed when the group is small enough and must
    /// agree with the table.
    pub fn from_parts(weyl: WeylType, table: &[IrrLabel], wgraphs: &[WGraph], grams: Vec<GramMatrix>) -> Result<Self> {
        let reps: Vec<GenMatrices> = wgraphs.iter().map(build_generator_matrices).collect();
        let mut labels = Vec::with_capacity(reps.len());
        for (m, g) in reps.iter().zip(&grams) {
            if g.label != m.label {
                return Err(Error::DimensionMismatch(format!("gram {} paired with W-graph {}", g.label, m.label)));
            }
            let l = table.iter().find(|l| l.name == m.label).ok_or_else(|| Error::MissingAInvariant(m.label.clone()))?;
            labels.push(l.clone());
        }
        let schur = if weyl.is_enumerable() {
            let s = schur_elements(&reps, &weyl)?;
            check_against_table(&s, table)?;
            labels = labels_from_schur(&s);
            Some(s)
        } else {
            None
        };
        Ok(Dataset { weyl, labels, reps, grams, cellular: false, schur })
    }

    fn gram(&self, label: &str) -> &GramMatrix {
        &self.grams[self.labels.iter().position(|l| l.name == label).unwrap()]
    }
}

#[derive(Clone, Copy, Debug)]
pub struct PipelineOptions {
    pub seed: u64,
    pub budget: usize,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions { seed: 1, budget: DEFAULT_BUDGET }
    }
}

/// Simple module `L^mu`: its label, `a_mu` and dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleRow {
    pub label: String,
    pub a: u32,
    pub dim: usize,
}

#[derive(Clone, Debug)]
pub struct PipelineReport {
    pub weyl: WeylType,
    pub e: u64,
    pub ell: u64,
    pub field: String,
    pub semisimple: bool,
    pub simples: Vec<SimpleRow>,
    pub decomposition: DecompMatrix,
    /// Prime used for the characteristic-zero decomposition matrix.
    pub surrogate_prime: Option<u64>,
    pub blocks: BlockPartition,
    pub adjustment: AdjustmentMatrix,
    pub james: JamesReport,
}

impl PipelineReport {
    /// The radical verdict together with a trivial adjustment matrix.
    pub fn verdict(&self) -> bool {
        self.james.holds() && self.adjustment.is_identity()
    }
}

/// Smallest prime above 50 that is `1 mod 2e`, e-regular and outside `avoid`.
pub fn surrogate_prime(t: &WeylType, e: u64, avoid: &[u64]) -> u64 {
    (51..)
        .find(|&p| p % (2 * e) == 1 && is_prime(p) && is_e_regular(t, e, p) && !avoid.contains(&p))
        .expect("infinitely many primes are 1 mod 2e")
}

fn identity_matrix(d: &Dataset, e: u64, ell: u64) -> DecompMatrix {
    let n = d.labels.len();
    DecompMatrix {
        e,
        ell,
        rows: d.labels.clone(),
        columns: d.labels.iter().map(|l| l.name.clone()).collect(),
        column_dims: d.labels.iter().map(|l| l.dim).collect(),
        entries: (0..n).map(|i| (0..n).map(|j| usize::from(i == j)).collect()).collect(),
    }
}

fn decompose(d: &Dataset, e: u64, ell: u64, opts: &PipelineOptions) -> Result<DecompMatrix> {
    let (f, theta) = modular_target(e, ell)?;
    let modules =
        d.reps.iter().zip(&d.labels).map(|(m, l)| Ok((l.clone(), FModule::specialize(m, &f, theta)?))).collect::<Result<Vec<_>>>()?;
    decomposition_matrix(&modules, e, ell, opts.seed, opts.budget)
}

/// Checks the columns of `dm` against Gram ranks given by `rank_of`: each
/// column dimension is the rank of its form, and with cellular forms every
/// other label has rank zero.
fn cross_check(d: &Dataset, dm: &DecompMatrix, what: &str, rank_of: impl Fn(&GramMatrix) -> Result<usize>) -> Result<()> {
    for (l, g) in d.labels.iter().zip(&d.grams) {
        let rank = rank_of(g)?;
        match dm.column_of(&l.name) {
            Some(j) if dm.column_dims[j] != rank => {
                return Err(Error::VerificationFailed(format!(
                    "{what}: dim L^{} = {} but the form has rank {rank}",
                    l.name, dm.column_dims[j]
                )))
            }
            None if d.cellular && rank != 0 => {
                return Err(Error::VerificationFailed(format!("{what}: {} has no simple head but rank {rank}", l.name)))
            }
            _ => {}
        }
    }
    Ok(())
}

fn simples_table(d: &Dataset, dm: &DecompMatrix) -> Vec<SimpleRow> {
    let mut rows: Vec<(usize, SimpleRow)> = dm
        .columns
        .iter()
        .zip(&dm.column_dims)
        .map(|(c, &dim)| {
            let pos = d.labels.iter().position(|l| &l.name == c).unwrap();
            (pos, SimpleRow { label: c.clone(), a: d.labels[pos].a.unwrap_or(0), dim })
        })
        .collect();
    rows.sort_by_key(|(pos, r)| (r.a, *pos));
    rows.into_iter().map(|(_, r)| r).collect()
}

/// Runs the whole pipeline at `(e, ell)`; refuses input that is not
/// e-regular.
pub fn run_pipeline(d: &Dataset, e: u64, ell: u64, opts: &PipelineOptions) -> Result<PipelineReport> {
    check_modular_target(&d.weyl, e, ell)?;
    let (f, theta) = modular_target(e, ell)?;
    let field = format!("GF({}^{}), v = {}", ell, f.degree(), f.format_elem(theta));
    let semisimple = semisimple_at(&d.weyl, e);

    let (decomposition, surrogate_prime, d_zeta) = if semisimple {
        let id = identity_matrix(d, e, ell);
        (id.clone(), None, id)
    } else {
        let dm = decompose(d, e, ell, opts)?;
        cross_check(d, &dm, "characteristic l", |g| Ok(rank_at_modular(g, e, ell)?.rank))?;
        let mut avoid = Vec::new();
        for g in &d.grams {
            avoid.extend(bad_prime_set(g, e, &d.weyl)?.candidates);
        }
        let ell0 = surrogate_prime(&d.weyl, e, &avoid);
        let dz = decompose(d, e, ell0, opts)?;
        cross_check(d, &dz, "zeta surrogate", |g| Ok(rank_at_zeta(g, e).rank))?;
        if dz.columns.len() != dm.columns.len() {
            return Err(Error::VerificationFailed(format!(
                "{} simple modules at l = {ell} but {} at zeta",
                dm.columns.len(),
                dz.columns.len()
            )));
        }
        (dm, Some(ell0), dz)
    };

    let adjustment = adjustment_matrix(&decomposition, &d_zeta)?;
    let mut blocks = brauer_blocks(&decomposition);
    if let Some(schur) = &d.schur {
        blocks = block_defects(&blocks, schur, e)?;
        check_block_structure(&blocks, &decomposition)?;
    }
    let compared: Vec<GramMatrix> = if d.cellular { d.grams.clone() } else { d_zeta.columns.iter().map(|c| d.gram(c).clone()).collect() };
    let james = james_verdict(&compared, &d.weyl, e, ell)?;
    if james.holds() && !adjustment.is_identity() {
        return Err(Error::VerificationFailed("radicals agree but the adjustment matrix is not the identity".into()));
    }
    Ok(PipelineReport {
        weyl: d.weyl,
        e,
        ell,
        field,
        semisimple,
        simples: simples_table(d, &decomposition),
        decomposition,
        surrogate_prime,
        blocks,
        adjustment,
        james,
    })
}

fn write_block(out: &mut String, b: &Block) -> fmt::Result {
    let defect = b.defect.map_or("?".to_string(), |d| d.to_string());
    writeln!(out, "  {{{}}}  defect {defect}", b.labels.join(", "))
}

fn write_table(out: &mut String, header: &[String], rows: &[(String, Vec<String>)]) -> fmt::Result {
    let w0 = rows.iter().map(|(l, _)| l.len()).max().unwrap_or(0);
    let w = header.iter().map(String::len).max().unwrap_or(1).max(1);
    write!(out, "  {:w0$}", "")?;
    for h in header {
        write!(out, " {h:>w$}")?;
    }
    writeln!(out)?;
    for (l, cells) in rows {
        write!(out, "  {l:w0$}")?;
        for c in cells {
            write!(out, " {c:>w$}")?;
        }
        writeln!(out)?;
    }
    Ok(())
}

/// A decomposition matrix as an aligned table with `.` for zero.
pub fn format_decomposition(d: &DecompMatrix) -> String {
    let rows: Vec<(String, Vec<String>)> = d
        .rows
        .iter()
        .zip(&d.entries)
        .map(|(l, r)| (l.name.clone(), r.iter().map(|&x| if x == 0 { ".".into() } else { x.to_string() }).collect()))
        .collect();
    let mut out = String::new();
    write_table(&mut out, &d.columns, &rows).unwrap();
    out
}

impl fmt::Display for PipelineReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        writeln!(out, "type {}  e = {}  l = {}  field {}", self.weyl, self.e, self.ell, self.field)?;
        writeln!(out, "semisimple: {}", if self.semisimple { "yes" } else { "no" })?;
        match self.surrogate_prime {
            Some(p) => writeln!(out, "characteristic-zero surrogate: l0 = {p}")?,
            None => writeln!(out, "characteristic-zero surrogate: not needed")?,
        }
        writeln!(out, "simple modules (label, a, dim L):")?;
        let w = self.simples.iter().map(|r| r.label.len()).max().unwrap_or(0);
        for r in &self.simples {
            writeln!(out, "  {:w$}  {:>2}  {}", r.label, r.a, r.dim)?;
        }
        writeln!(out, "decomposition matrix:")?;
        out.push_str(&format_decomposition(&self.decomposition));
        writeln!(out, "blocks:")?;
        for b in &self.blocks.blocks {
            write_block(&mut out, b)?;
        }
        if self.adjustment.is_identity() {
            writeln!(out, "adjustment matrix: identity")?;
        } else {
            writeln!(out, "adjustment matrix:")?;
            let rows: Vec<(String, Vec<String>)> = self
                .adjustment
                .rows
                .iter()
                .zip(&self.adjustment.entries)
                .map(|(l, r)| (l.clone(), r.iter().map(u64::to_string).collect()))
                .collect();
            write_table(&mut out, &self.adjustment.columns, &rows)?;
        }
        writeln!(out, "radical dimensions (label, dim, corank at zeta, corank at l):")?;
        let w = self.james.rows.iter().map(|r| r.label.len()).max().unwrap_or(0);
        for r in &self.james.rows {
            let mark = if r.agrees() { "" } else { "  differs" };
            writeln!(out, "  {:w$}  {}  {}  {}{mark}", r.label, r.dim, r.corank_zeta, r.corank_ell)?;
        }
        writeln!(out, "verdict: {}", self.verdict())?;
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dims(r: &PipelineReport) -> Vec<(String, usize)> {
        r.simples.iter().map(|s| (s.label.clone(), s.dim)).collect()
    }

    fn own(v: &[(&str, usize)]) -> Vec<(String, usize)> {
        v.iter().map(|(l, d)| (l.to_string(), *d)).collect()
    }

    #[test]
    fn g2_e3_l7() {
        let d = Dataset::g2().unwrap();
        let r = run_pipeline(&d, 3, 7, &PipelineOptions::default()).unwrap();
        assert_eq!(dims(&r), own(&[("1", 1), ("eps1", 1), ("eps2", 1), ("r", 2), ("r'", 1)]));
        assert!(r.verdict());
        let singletons: Vec<&str> = r.blocks.blocks.iter().filter(|b| b.labels.len() == 1).map(|b| b.labels[0].as_str()).collect();
        let defect0: Vec<&str> =
            d.schur.as_ref().unwrap().iter().filter(|s| crate::hecke::phi_e_defect(s, 3) == 0).map(|s| s.label.as_str()).collect();
        assert_eq!(singletons, defect0);
        let one = r.blocks.blocks.iter().find(|b| b.labels.contains(&"1".to_string())).unwrap();
        assert_eq!(one.defect, Some(1));
    }

    #[test]
    fn g2_semisimple_and_refusals() {
        let d = Dataset::g2().unwrap();
        let r = run_pipeline(&d, 5, 7, &PipelineOptions::default()).unwrap();
        assert!(r.semisimple && r.decomposition.is_identity() && r.verdict());
        assert_eq!(r.blocks.blocks.len(), 6);
        let err = run_pipeline(&d, 3, 3, &PipelineOptions::default()).unwrap_err();
        assert!(err.to_string().contains("bad prime"), "{err}");
    }

    #[test]
    fn surrogate_choice() {
        let t: WeylType = "G2".parse().unwrap();
        assert_eq!(surrogate_prime(&t, 3, &[]), 61);
        assert_eq!(surrogate_prime(&t, 3, &[61]), 67);
    }
}
