//! The variety engine: value sweeps of radical and socle dimensions over
//! Grassmannian points, r-rank varieties, nonmaximal/nonminimal support
//! varieties, constancy evidence across field extensions, candidate-ideal
//! matching, and geometric predicate checks.
//!
//! Sweeps over finite fields are evidence, not proof, of constancy over the
//! algebraic closure; nonconstancy witnesses are proofs. Reports label this
//! explicitly.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::coh::{CohClass, Resolution};
use crate::field::FqField;
use crate::grass::{enumerate_planes, grassmannian_count, random_plane, Plane};
use crate::modrep::{rad_dim, soc_dim, KEModule, ModError};
use crate::plucker::{PluckerIndex, PluckerPoly};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SupportError {
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("unknown geometric predicate {0:?}")]
    UnknownPredicate(String),
    #[error("class outside the supported comparison regime (r > 3 and not a product of degree-one classes)")]
    OutOfRegime,
}

impl From<ModError> for SupportError {
    fn from(e: ModError) -> Self {
        SupportError::FieldMismatch(e.to_string())
    }
}

/// Planes above the exhaustive-enumeration threshold are sampled instead.
pub const EXHAUSTIVE_LIMIT: u128 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SweepKind {
    Rad,
    Soc,
    Free,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldDesc {
    pub p: u64,
    pub m: usize,
    pub modulus: Vec<u64>,
}

impl FieldDesc {
    pub fn of(field: &FqField) -> FieldDesc {
        FieldDesc { p: field.p(), m: field.degree(), modulus: field.modulus().to_vec() }
    }
}

/// One plane in a report: canonical rows plus its Plücker vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportPoint {
    pub rows: Vec<Vec<u16>>,
    pub plucker: Vec<(Vec<u8>, u16)>,
}

impl ReportPoint {
    fn of(u: &Plane) -> ReportPoint {
        ReportPoint {
            rows: (0..u.r).map(|i| u.basis.row(i).to_vec()).collect(),
            plucker: u.plucker().into_iter().map(|(i, v)| (i.0, v)).collect(),
        }
    }
}

/// Result of a per-plane value sweep.
#[derive(Clone, Debug, Serialize)]
pub struct SupportReport {
    pub module_id: String,
    pub r: usize,
    pub j: usize,
    pub kind: SweepKind,
    pub field: FieldDesc,
    pub plane_count: u128,
    /// value -> number of planes attaining it
    pub histogram: BTreeMap<usize, u128>,
    /// max over planes for rad, min for soc; 1 (free) for kind = free
    pub extremal: usize,
    /// the non-extremal (or non-free) planes
    pub points: Vec<ReportPoint>,
}

impl SupportReport {
    pub fn is_constant(&self) -> bool {
        self.histogram.len() <= 1
    }
}

fn plane_value(m: &KEModule, u: &Plane, j: usize, kind: SweepKind) -> Result<usize, ModError> {
    let p = m.p() as usize;
    let ops = m.restricted_ops(u)?;
    Ok(match kind {
        SweepKind::Rad => rad_dim(&ops, j, p),
        SweepKind::Soc => soc_dim(&ops, j, p),
        SweepKind::Free => usize::from(m.is_free_over(u)?),
    })
}

/// Exhaustive sweep of dim Rad_U^j / dim Soc_U^j / freeness over all planes
/// of Grass(r, F_q^n). Scalars are extended when `field` is larger than the
/// module's prime field.
pub fn value_sweep(
    m: &KEModule,
    module_id: &str,
    r: usize,
    j: usize,
    kind: SweepKind,
    field: &Arc<FqField>,
) -> Result<SupportReport, SupportError> {
    let m = m.extend_scalars(field)?;
    let planes: Vec<Plane> = enumerate_planes(field, m.n, r)
        .map_err(|e| SupportError::FieldMismatch(e.to_string()))?
        .collect();
    let values: Vec<(Plane, usize)> = planes
        .into_par_iter()
        .map(|u| {
            let v = plane_value(&m, &u, j, kind).expect("same field by construction");
            (u, v)
        })
        .collect();
    let mut histogram: BTreeMap<usize, u128> = BTreeMap::new();
    for (_, v) in &values {
        *histogram.entry(*v).or_insert(0) += 1;
    }
    let extremal = match kind {
        SweepKind::Rad => histogram.keys().max().copied().unwrap_or(0),
        SweepKind::Soc => histogram.keys().min().copied().unwrap_or(0),
        SweepKind::Free => 1,
    };
    let mut points: Vec<ReportPoint> = values
        .iter()
        .filter(|(_, v)| *v != extremal)
        .map(|(u, _)| ReportPoint::of(u))
        .collect();
    points.sort_by(|a, b| a.rows.cmp(&b.rows));
    Ok(SupportReport {
        module_id: module_id.to_string(),
        r,
        j,
        kind,
        field: FieldDesc::of(field),
        plane_count: values.len() as u128,
        histogram,
        extremal,
        points,
    })
}

/// The r-rank variety: planes where the restriction fails to be free.
pub fn rank_variety(
    m: &KEModule,
    module_id: &str,
    r: usize,
    field: &Arc<FqField>,
) -> Result<SupportReport, SupportError> {
    value_sweep(m, module_id, r, 1, SweepKind::Free, field)
}

#[derive(Clone, Debug, Serialize)]
pub enum JVerdict {
    /// Same value at every inspected plane: evidence, not proof.
    ConstantOnEvidence { value: usize },
    /// Two witness planes with different values: a proof of nonconstancy.
    NonConstant { value_a: usize, witness_a: ReportPoint, value_b: usize, witness_b: ReportPoint },
}

impl JVerdict {
    pub fn is_constant(&self) -> bool {
        matches!(self, JVerdict::ConstantOnEvidence { .. })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FieldEvidence {
    pub field: FieldDesc,
    pub exhaustive: bool,
    pub planes_inspected: u128,
    pub seed: u64,
    /// index j-1 holds the verdict for Rad^j / Soc^j, j = 1..=r(p-1)
    pub rad: Vec<JVerdict>,
    pub soc: Vec<JVerdict>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstancyReport {
    pub module_id: String,
    pub r: usize,
    pub per_field: Vec<FieldEvidence>,
}

impl ConstancyReport {
    pub fn rad_constant_all(&self) -> bool {
        self.per_field.iter().all(|f| f.rad.iter().all(|v| v.is_constant()))
    }
    pub fn soc_constant_all(&self) -> bool {
        self.per_field.iter().all(|f| f.soc.iter().all(|v| v.is_constant()))
    }
}

/// Constancy evidence for all j: exhaustive when the Grassmannian is small,
/// otherwise `samples` random planes from a seeded generator.
pub fn constant_type_evidence(
    m: &KEModule,
    module_id: &str,
    r: usize,
    fields: &[Arc<FqField>],
    samples: usize,
    seed: u64,
) -> Result<ConstancyReport, SupportError> {
    assert!(samples >= 1);
    let p = m.p() as usize;
    let jmax = r * (p - 1);
    let mut per_field = Vec::new();
    for field in fields {
        let mext = m.extend_scalars(field)?;
        let count = grassmannian_count(field.order(), mext.n, r);
        let exhaustive = count <= EXHAUSTIVE_LIMIT;
        let planes: Vec<Plane> = if exhaustive {
            enumerate_planes(field, mext.n, r)
                .map_err(|e| SupportError::FieldMismatch(e.to_string()))?
                .collect()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..samples).map(|_| random_plane(field, mext.n, r, &mut rng)).collect()
        };
        let mut rad_verdicts = Vec::new();
        let mut soc_verdicts = Vec::new();
        for j in 1..=jmax {
            for (kind, sink) in
                [(SweepKind::Rad, &mut rad_verdicts), (SweepKind::Soc, &mut soc_verdicts)]
            {
                let vals: Vec<usize> = planes
                    .par_iter()
                    .map(|u| plane_value(&mext, u, j, kind).expect("fields match"))
                    .collect();
                let first = vals[0];
                let verdict = match vals.iter().position(|&v| v != first) {
                    None => JVerdict::ConstantOnEvidence { value: first },
                    Some(idx) => JVerdict::NonConstant {
                        value_a: first,
                        witness_a: ReportPoint::of(&planes[0]),
                        value_b: vals[idx],
                        witness_b: ReportPoint::of(&planes[idx]),
                    },
                };
                sink.push(verdict);
            }
        }
        per_field.push(FieldEvidence {
            field: FieldDesc::of(field),
            exhaustive,
            planes_inspected: planes.len() as u128,
            seed,
            rad: rad_verdicts,
            soc: soc_verdicts,
        });
    }
    Ok(ConstancyReport { module_id: module_id.to_string(), r, per_field })
}

#[derive(Clone, Debug, Serialize)]
pub struct MatchResult {
    pub matched: bool,
    /// points of the report not in the ideal's zero locus
    pub report_not_ideal: Vec<ReportPoint>,
    /// zero-locus planes missing from the report
    pub ideal_not_report: Vec<ReportPoint>,
}

/// Compare the report's point set with the zero locus of candidate
/// generators, both directions.
pub fn match_ideal(
    report: &SupportReport,
    gens: &[PluckerPoly],
    field: &Arc<FqField>,
    n: usize,
) -> MatchResult {
    let report_set: BTreeSet<Vec<Vec<u16>>> =
        report.points.iter().map(|p| p.rows.clone()).collect();
    let mut report_not_ideal = Vec::new();
    let mut ideal_not_report = Vec::new();
    for u in enumerate_planes(field, n, report.r).expect("valid range") {
        let coords: BTreeMap<PluckerIndex, u16> = u.plucker().into_iter().collect();
        let in_zero_locus = gens.iter().all(|g| g.eval(&coords) == 0);
        let rows: Vec<Vec<u16>> = (0..u.r).map(|i| u.basis.row(i).to_vec()).collect();
        let in_report = report_set.contains(&rows);
        if in_report && !in_zero_locus {
            report_not_ideal.push(ReportPoint::of(&u));
        }
        if in_zero_locus && !in_report {
            ideal_not_report.push(ReportPoint::of(&u));
        }
    }
    MatchResult {
        matched: report_not_ideal.is_empty() && ideal_not_report.is_empty(),
        report_not_ideal,
        ideal_not_report,
    }
}

/// Geometric membership predicates from a fixed catalogue.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Predicate {
    /// U contains some standard coordinate vector.
    ContainsCoordinateVector,
    /// U meets both listed coordinate subspaces (0-based column sets).
    Split(Vec<usize>, Vec<usize>),
    /// Union: coordinate vector, or V_{12} x V_{34} split, or V_{14} x V_{23}.
    QuantumSocleLocus,
    All,
    Empty,
}

impl Predicate {
    pub fn by_name(name: &str) -> Result<Predicate, SupportError> {
        match name {
            "coordinate-vector" => Ok(Predicate::ContainsCoordinateVector),
            "split-12x34" => Ok(Predicate::Split(vec![0, 1], vec![2, 3])),
            "split-14x23" => Ok(Predicate::Split(vec![0, 3], vec![1, 2])),
            "split-13x24" => Ok(Predicate::Split(vec![0, 2], vec![1, 3])),
            "quantum-socle-locus" => Ok(Predicate::QuantumSocleLocus),
            "all" => Ok(Predicate::All),
            "empty" => Ok(Predicate::Empty),
            other => Err(SupportError::UnknownPredicate(other.to_string())),
        }
    }

    pub fn holds(&self, u: &Plane) -> bool {
        match self {
            Predicate::ContainsCoordinateVector => {
                (0..u.n).any(|i| u.contains_coordinate_vector(i))
            }
            Predicate::Split(a, b) => {
                u.intersection_dim_with_coordinate_subspace(a) >= 1
                    && u.intersection_dim_with_coordinate_subspace(b) >= 1
            }
            Predicate::QuantumSocleLocus => {
                Predicate::ContainsCoordinateVector.holds(u)
                    || Predicate::Split(vec![0, 1], vec![2, 3]).holds(u)
                    || Predicate::Split(vec![0, 3], vec![1, 2]).holds(u)
            }
            Predicate::All => true,
            Predicate::Empty => false,
        }
    }
}

/// True iff predicate membership equals the report's point set exactly.
pub fn geometric_predicate_check(
    report: &SupportReport,
    predicate: &Predicate,
    field: &Arc<FqField>,
    n: usize,
) -> bool {
    let report_set: BTreeSet<Vec<Vec<u16>>> =
        report.points.iter().map(|p| p.rows.clone()).collect();
    for u in enumerate_planes(field, n, report.r).expect("valid range") {
        let rows: Vec<Vec<u16>> = (0..u.r).map(|i| u.basis.row(i).to_vec()).collect();
        if predicate.holds(&u) != report_set.contains(&rows) {
            return false;
        }
    }
    true
}

/// Whether the nonmaximal radical support of L_ζ equals the locus where the
/// restricted class dies (literally for products of degree-one classes,
/// modulo nilpotents otherwise; the latter needs r <= 3).
pub fn lzeta_support_compare(
    res: &Resolution,
    zeta: &CohClass,
    r: usize,
    field: &Arc<FqField>,
) -> Result<bool, SupportError> {
    let p = zeta.field.p();
    let linear_product = zeta.is_eta_monomial() || (p == 2 && zeta.terms.len() == 1);
    if r > 3 && !linear_product {
        return Err(SupportError::OutOfRegime);
    }
    let l = crate::coh::l_zeta(res, zeta)
        .map_err(|e| SupportError::FieldMismatch(e.to_string()))?;
    let report = value_sweep(&l, "L_zeta", r, 1, SweepKind::Rad, field)?;
    let nonmax: BTreeSet<Vec<Vec<u16>>> = report.points.iter().map(|pt| pt.rows.clone()).collect();
    let l_ext = l.extend_scalars(field)?;
    let zeta_ext = extend_class(zeta, field);
    for u in enumerate_planes(field, l_ext.n, r).expect("valid range") {
        let restricted = zeta_ext
            .restrict(&u)
            .map_err(|e| SupportError::FieldMismatch(e.to_string()))?;
        let dies = if linear_product { restricted.is_zero() } else { restricted.reduced_is_zero() };
        let rows: Vec<Vec<u16>> = (0..u.r).map(|i| u.basis.row(i).to_vec()).collect();
        if dies != nonmax.contains(&rows) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn extend_class(zeta: &CohClass, field: &Arc<FqField>) -> CohClass {
    if *zeta.field == **field {
        return zeta.clone();
    }
    let mut out = CohClass::zero(field, zeta.n);
    for (k, &c) in &zeta.terms {
        out.add_term(k, c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modrep::KEModule;
    use crate::plucker::PluckerMonomial;

    #[test]
    fn rank_variety_of_quotient_is_p34_locus() {
        // kE/(x1,x2), p=2, n=4, r=2: not-free exactly on Z(p34)
        let f2 = FqField::prime(2).unwrap();
        let m = KEModule::quotient_by_generators(&f2, 4, &[0, 1]);
        let report = rank_variety(&m, "kE/(x1,x2)", 2, &f2).unwrap();
        assert_eq!(report.plane_count, 35);
        let gen = PluckerPoly::coordinate(&f2, 4, 2, PluckerIndex::new(vec![3, 4]));
        let result = match_ideal(&report, &[gen], &f2, 4);
        assert!(result.matched);
    }

    #[test]
    fn rank_variety_of_free_module_is_empty() {
        let f2 = FqField::prime(2).unwrap();
        let ke = KEModule::regular(&f2, 3);
        let report = rank_variety(&ke, "kE", 2, &f2).unwrap();
        assert!(report.points.is_empty());
        // empty generator list vs nonempty point set -> mismatch
        let m = KEModule::quotient_by_generators(&f2, 3, &[0]);
        let r2 = rank_variety(&m, "kE/(x1)", 2, &f2).unwrap();
        assert!(!r2.points.is_empty());
        let res = match_ideal(&r2, &[], &f2, 3);
        assert!(!res.matched);
        assert!(!res.ideal_not_report.is_empty());
    }

    #[test]
    fn nonmax_radical_of_quotient_r3() {
        // Rad(3,V)_M = Z(p134, p234) for M = kE/(x1,x2), p=2, n=4
        let f2 = FqField::prime(2).unwrap();
        let m = KEModule::quotient_by_generators(&f2, 4, &[0, 1]);
        let report = value_sweep(&m, "kE/(x1,x2)", 3, 1, SweepKind::Rad, &f2).unwrap();
        let g1 = PluckerPoly::coordinate(&f2, 4, 3, PluckerIndex::new(vec![1, 3, 4]));
        let g2 = PluckerPoly::coordinate(&f2, 4, 3, PluckerIndex::new(vec![2, 3, 4]));
        assert!(match_ideal(&report, &[g1, g2], &f2, 4).matched);
        // codimension p when the killed plane lies inside U, else 1
        for (val, _) in report.histogram.iter() {
            assert!(*val == m.dim - 1 || *val == m.dim - 2);
        }
    }

    #[test]
    fn union_of_rank_varieties_under_direct_sum() {
        let f2 = FqField::prime(2).unwrap();
        let a = KEModule::quotient_by_generators(&f2, 3, &[0]);
        let b = KEModule::quotient_by_generators(&f2, 3, &[1]);
        let ab = a.direct_sum(&b).unwrap();
        let ra: BTreeSet<_> =
            rank_variety(&a, "a", 2, &f2).unwrap().points.into_iter().map(|p| p.rows).collect();
        let rb: BTreeSet<_> =
            rank_variety(&b, "b", 2, &f2).unwrap().points.into_iter().map(|p| p.rows).collect();
        let rab: BTreeSet<_> =
            rank_variety(&ab, "a+b", 2, &f2).unwrap().points.into_iter().map(|p| p.rows).collect();
        let union: BTreeSet<_> = ra.union(&rb).cloned().collect();
        assert_eq!(rab, union);
    }

    #[test]
    fn projective_module_constant_sweeps() {
        let f3 = FqField::prime(3).unwrap();
        let ke = KEModule::regular(&f3, 2);
        let report = value_sweep(&ke, "kE", 1, 1, SweepKind::Soc, &f3).unwrap();
        assert_eq!(report.histogram.len(), 1);
        let evidence = constant_type_evidence(&ke, "kE", 1, &[f3.clone()], 10, 7).unwrap();
        assert!(evidence.rad_constant_all());
        assert!(evidence.soc_constant_all());
    }

    #[test]
    fn benzol_radical_witnesses() {
        // W_1(3, q), q=2 over F5: rad values 5 and 6; socle constant
        let f5 = FqField::prime(5).unwrap();
        let qm = crate::zoo::QMatrix::uniform(&f5, 3, 2).unwrap();
        let m = crate::zoo::w_module(&f5, 3, 3, 1, &qm).unwrap();
        let rad = value_sweep(&m, "benzol", 2, 1, SweepKind::Rad, &f5).unwrap();
        let vals: Vec<usize> = rad.histogram.keys().copied().collect();
        assert_eq!(vals, vec![5, 6]);
        let soc = value_sweep(&m, "benzol", 2, 1, SweepKind::Soc, &f5).unwrap();
        assert!(soc.is_constant());
        let ev = constant_type_evidence(&m, "benzol", 2, &[f5.clone()], 10, 1).unwrap();
        assert!(!ev.per_field[0].rad[0].is_constant());
        assert!(ev.per_field[0].soc[0].is_constant());
    }

    #[test]
    fn nonconst_module_support_is_coordinate_lines() {
        // W_1(2,q), n=3, q=2 over F5: nonmaximal 1-radical support is the
        // union of the three coordinate lines {a=0} u {b=0} u {c=0}
        let f5 = FqField::prime(5).unwrap();
        let qm = crate::zoo::QMatrix::uniform(&f5, 3, 2).unwrap();
        let m = crate::zoo::w_module(&f5, 3, 2, 1, &qm).unwrap();
        let report = value_sweep(&m, "W1(2,q)", 1, 1, SweepKind::Rad, &f5).unwrap();
        for u in enumerate_planes(&f5, 3, 1).unwrap() {
            let coords = u.basis.row(0);
            let on_lines = coords.iter().any(|&c| c == 0);
            let rows: Vec<Vec<u16>> = vec![coords.to_vec()];
            let in_points = report.points.iter().any(|p| p.rows == rows);
            assert_eq!(on_lines, in_points);
        }
    }

    #[test]
    fn predicate_catalogue() {
        let f2 = FqField::prime(2).unwrap();
        let m = KEModule::regular(&f2, 3);
        let report = rank_variety(&m, "kE", 2, &f2).unwrap();
        assert!(geometric_predicate_check(&report, &Predicate::Empty, &f2, 3));
        assert!(!geometric_predicate_check(&report, &Predicate::All, &f2, 3));
        assert!(Predicate::by_name("nonsense").is_err());
        // complexity >= 2 module: the 2-rank variety is everything
        let k = KEModule::trivial(&f2, 3);
        let rk = rank_variety(&k, "k", 2, &f2).unwrap();
        assert!(geometric_predicate_check(&rk, &Predicate::All, &f2, 3));
    }

    #[test]
    fn straighten_relation_vanishes_on_reports() {
        // the classical three-term relation evaluates to zero at every plane
        let f3 = FqField::prime(3).unwrap();
        let mut rel = PluckerPoly::zero(&f3, 4, 2);
        rel.add_term(
            PluckerMonomial::from_rows(vec![
                PluckerIndex::new(vec![1, 2]),
                PluckerIndex::new(vec![3, 4]),
            ]),
            1,
        );
        rel.add_term(
            PluckerMonomial::from_rows(vec![
                PluckerIndex::new(vec![1, 3]),
                PluckerIndex::new(vec![2, 4]),
            ]),
            f3.neg(1),
        );
        rel.add_term(
            PluckerMonomial::from_rows(vec![
                PluckerIndex::new(vec![1, 4]),
                PluckerIndex::new(vec![2, 3]),
            ]),
            1,
        );
        for u in enumerate_planes(&f3, 4, 2).unwrap() {
            let coords: BTreeMap<PluckerIndex, u16> = u.plucker().into_iter().collect();
            assert_eq!(rel.eval(&coords), 0);
        }
    }

    #[test]
    fn lzeta_compare_p2_line_case() {
        // p=2, n=3, ζ=ζ1, r=1: nonmaximal set is the hyperplane ζ1 = 0
        let f2 = FqField::prime(2).unwrap();
        let res = Resolution::build(&f2, 3, 1);
        let zeta = CohClass::zeta_monomial(&f2, 3, &[1, 0, 0]);
        assert!(lzeta_support_compare(&res, &zeta, 1, &f2).unwrap());
    }

    #[test]
    fn lzeta_compare_out_of_regime() {
        let f2 = FqField::prime(2).unwrap();
        let res = Resolution::build(&f2, 5, 2);
        let mut z = CohClass::zeta_monomial(&f2, 5, &[1, 1, 0, 0, 0]);
        z.add_term(&(Vec::new(), vec![0, 0, 1, 1, 0]), 1);
        assert_eq!(
            lzeta_support_compare(&res, &z, 4, &f2).unwrap_err(),
            SupportError::OutOfRegime
        );
    }
}
