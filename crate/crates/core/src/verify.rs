//! The aggregated verification suite for a rank-`n` triple and its JSON
//! report.

use std::time::Instant;

use serde::Serialize;

use crate::bialg::{self, Cocommutator};
use crate::gln::{self, GlnError, GlnIndex};
use crate::liealg::{self, LieAlgebra};
use crate::manin::{self, Convention, DoubleAlgebra, ManinTriple};
use crate::matrix::Matrix;
use crate::report::{Violation, ViolationReport};
use crate::sparse::TwoTensor;

pub const SCHEMA: &str = "manin-report/1";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub indices: Vec<usize>,
    pub residual: String,
}

impl From<&Violation> for Counterexample {
    fn from(v: &Violation) -> Self {
        Counterexample { indices: v.indices.clone(), residual: v.residual_string() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        }
    }
}

/// One named check. `status` is `Fail` exactly when `counterexamples` is
/// nonempty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub counterexamples: Vec<Counterexample>,
    pub millis: u64,
    pub notes: Vec<String>,
}

impl CheckResult {
    pub fn from_report(name: &str, report: &ViolationReport, notes: Vec<String>) -> Self {
        let counterexamples: Vec<Counterexample> = report.iter().map(Counterexample::from).collect();
        let status = if counterexamples.is_empty() { Status::Pass } else { Status::Fail };
        CheckResult { name: name.to_string(), status, counterexamples, millis: 0, notes }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub schema: String,
    pub tool_version: String,
    pub command: String,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    /// Checks are stored sorted by name.
    pub fn new(command: &str, mut checks: Vec<CheckResult>) -> Self {
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        VerificationReport { schema: SCHEMA.into(), tool_version: TOOL_VERSION.into(), command: command.into(), checks }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failed(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.passed()).map(|c| c.name.as_str()).collect()
    }

    /// Pretty JSON with object keys in sorted order.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        serde_json::to_string_pretty(&value).expect("value serializes")
    }

    pub fn to_text(&self, with_notes: bool) -> String {
        let mut out = String::new();
        for c in &self.checks {
            if with_notes {
                out.push_str(&format!("{:<22} {} ({} ms)\n", c.name, c.status.as_str(), c.millis));
            } else {
                out.push_str(&format!("{:<22} {}\n", c.name, c.status.as_str()));
            }
            for ce in &c.counterexamples {
                out.push_str(&format!("    at {:?}: {}\n", ce.indices, ce.residual));
            }
            if with_notes {
                for note in &c.notes {
                    out.push_str(&format!("    note: {}\n", note));
                }
            }
        }
        let failed = self.failed();
        if failed.is_empty() {
            out.push_str(&format!("all {} checks passed\n", self.checks.len()));
        } else {
            out.push_str(&format!("{} of {} checks failed: {}\n", failed.len(), self.checks.len(), failed.join(", ")));
        }
        out
    }
}

/// The two halves of a rank-`n` triple on the index conventions of
/// [`gln`]. They need not be compatible.
#[derive(Debug, Clone)]
pub struct SuiteInput {
    pub n: usize,
    pub s_plus: LieAlgebra,
    pub s_minus: LieAlgebra,
}

impl SuiteInput {
    pub fn gln(n: usize) -> Result<Self, GlnError> {
        Ok(SuiteInput { n, s_plus: gln::build_s_plus(n)?, s_minus: gln::build_s_minus(n)? })
    }
}

fn error_report(message: impl std::fmt::Display) -> ViolationReport {
    std::iter::once(Violation::scalar(Vec::new(), crate::Scalar::zero()).with_note(format!("error: {}", message))).collect()
}

struct Context {
    n: usize,
    triple: ManinTriple,
    double: DoubleAlgebra,
    delta: Cocommutator,
    r_skew: TwoTensor,
    t: Matrix,
    hif: LieAlgebra,
    delta_hif: Cocommutator,
    r_hif: TwoTensor,
}

impl Context {
    fn new(input: &SuiteInput) -> Result<Self, GlnError> {
        let triple = ManinTriple::new_unchecked(input.s_plus.clone(), input.s_minus.clone())?;
        let double = manin::build_double_unchecked(&triple);
        let delta = bialg::cocommutator_from_triple(&triple);
        let (_, r_skew) = bialg::build_rmatrix(&triple);
        let t = gln::gln_change_of_basis(input.n)?;
        if t.rows() != double.dim() {
            return Err(GlnError::Lie(crate::LieError::DimensionMismatch { expected: t.rows(), found: double.dim() }));
        }
        let hif = double.algebra().change_of_basis(&t)?.with_labels(gln::gln_labels(input.n))?;
        let delta_hif = bialg::express_in_basis(&delta, &t)?;
        let r_hif = bialg::two_tensor_in_basis(&r_skew, &t)?;
        Ok(Context { n: input.n, triple, double, delta, r_skew, t, hif, delta_hif, r_hif })
    }
}

type Outcome = Result<(ViolationReport, Vec<String>), String>;

fn run_check(name: &str, record_timing: bool, f: impl FnOnce() -> Outcome) -> CheckResult {
    let start = Instant::now();
    let outcome = f();
    let millis = if record_timing { start.elapsed().as_millis() as u64 } else { 0 };
    let mut result = match outcome {
        Ok((report, notes)) => CheckResult::from_report(name, &report, notes),
        Err(message) => CheckResult::from_report(name, &error_report(&message), Vec::new()),
    };
    result.millis = millis;
    result
}

fn no_notes(report: ViolationReport) -> Outcome {
    Ok((report, Vec::new()))
}

fn coboundary_mismatch(alg: &LieAlgebra, r: &TwoTensor, delta: &Cocommutator) -> Result<ViolationReport, String> {
    let computed = bialg::coboundary(alg, r).map_err(|e| e.to_string())?;
    Ok(computed.compare(delta))
}

/// Suite names, in report order.
pub const CHECK_NAMES: [&str; 18] = [
    "ad-invariance",
    "chain-embedding",
    "co-jacobi",
    "coboundary",
    "cocycle",
    "compatibility",
    "delta-closed-form",
    "isomorphism-gln",
    "isotropy",
    "jacobi-double",
    "jacobi-s-minus",
    "jacobi-s-plus",
    "killing-form",
    "oscillator-pairing",
    "rmatrix-normalization",
    "schouten",
    "self-duality",
    "twist-split",
];

/// Runs every check on `input`. With `record_timing` false every `millis`
/// field is 0 and the report is byte-deterministic.
pub fn run_suite(command: &str, input: &SuiteInput, record_timing: bool) -> VerificationReport {
    let ctx = match Context::new(input) {
        Ok(ctx) => ctx,
        Err(e) => {
            let checks = CHECK_NAMES.iter().map(|name| CheckResult::from_report(name, &error_report(&e), Vec::new())).collect();
            return VerificationReport::new(command, checks);
        }
    };
    let n = ctx.n;
    let c = &ctx;
    let mut checks = Vec::new();
    let mut push = |name: &str, f: &dyn Fn() -> Outcome| checks.push(run_check(name, record_timing, f));

    push("jacobi-s-plus", &|| no_notes(c.triple.s_plus().check_jacobi()));
    push("jacobi-s-minus", &|| no_notes(c.triple.s_minus().check_jacobi()));
    push("compatibility", &|| {
        manin::check_compatibility(c.triple.s_plus().tensor(), c.triple.s_minus().tensor())
            .map(|r| (r, Vec::new()))
            .map_err(|e| e.to_string())
    });
    push("jacobi-double", &|| no_notes(c.double.algebra().check_jacobi()));
    push("isotropy", &|| no_notes(manin::check_isotropic_pairing(&c.double)));
    push("ad-invariance", &|| {
        let inv = manin::check_ad_invariance(&c.double);
        let holding: Vec<&str> = inv.holding().into_iter().map(Convention::describe).collect();
        let notes = vec![format!(
            "conventions holding: {}",
            if holding.is_empty() { "none".to_string() } else { holding.join("; ") }
        )];
        Ok((inv.standard.clone(), notes))
    });
    push("co-jacobi", &|| no_notes(bialg::check_cojacobi(&c.delta)));
    push("cocycle", &|| bialg::check_cocycle(c.double.algebra(), &c.delta).map(|r| (r, Vec::new())).map_err(|e| e.to_string()));
    push("coboundary", &|| {
        let mut report = coboundary_mismatch(c.double.algebra(), &c.r_skew, &c.delta)?;
        for v in coboundary_mismatch(&c.hif, &c.r_hif, &c.delta_hif)? {
            report.push(v.with_note("H,I,F basis"));
        }
        Ok((report, vec!["compared in the Z,z basis and in the H,I,F basis".into()]))
    });
    push("schouten", &|| {
        let q = bialg::schouten_check(c.double.algebra(), &c.r_skew);
        let mut notes = vec![format!("verdict: {}", q.verdict.name()), format!("bracket terms: {}", q.bracket.len())];
        notes.extend(q.notes.iter().cloned());
        Ok((q.non_invariant, notes))
    });
    push("isomorphism-gln", &|| {
        let report = gln::compare_with_gln(n, c.double.algebra()).map_err(|e| e.to_string())?;
        let notes = match report.first_difference() {
            None => vec![format!("equal to gl({}) + t_{} after the change of basis", n, n)],
            Some(d) => vec![format!("first difference at ({}, {}, {}): {} vs {}", d.p, d.q, d.r, d.left, d.right)],
        };
        Ok((report.to_violations(), notes))
    });
    push("delta-closed-form", &|| {
        let closed = gln::delta_closed_form(n).map_err(|e| e.to_string())?;
        no_notes(c.delta_hif.compare(&closed))
    });
    push("oscillator-pairing", &|| {
        let moved = c.double.pairing().transported(&c.t).map_err(|e| e.to_string())?;
        let target = gln::oscillator_form(n).map_err(|e| e.to_string())?;
        let dim = moved.dim();
        let mut report = ViolationReport::new();
        for p in 0..dim {
            for q in p..dim {
                let diff = moved.get(p, q) - target.get(p, q);
                if !diff.is_zero() {
                    report.push(Violation::scalar(vec![p, q], diff));
                }
            }
        }
        no_notes(report)
    });
    push("killing-form", &|| {
        let killing = c.hif.killing_form();
        let mut report = ViolationReport::new();
        for a in 0..c.hif.dim() {
            let ad = c.hif.adjoint_matrix(a).map_err(|e| e.to_string())?;
            // ad_a^T K + K ad_a = 0
            let lhs = &ad.transpose() * killing.matrix();
            let rhs = killing.matrix() * &ad;
            for p in 0..c.hif.dim() {
                for q in 0..c.hif.dim() {
                    let s = lhs.get(p, q) + rhs.get(p, q);
                    if !s.is_zero() {
                        report.push(Violation::scalar(vec![a, p, q], s));
                    }
                }
            }
        }
        let oscillator = gln::oscillator_form(n).map_err(|e| e.to_string())?;
        let central_zero = (0..n).all(|i| {
            let p = GlnIndex::I(i).flatten(n);
            (0..c.hif.dim()).all(|q| killing.get(p, q).is_zero())
        });
        let notes = vec![
            format!("killing form equals the oscillator form: {}", killing == oscillator),
            format!("killing form vanishes on the central block: {}", central_zero),
            format!("killing form determinant: {}", killing.determinant()),
        ];
        Ok((report, notes))
    });
    push("rmatrix-normalization", &|| {
        let (r_s, r_t) = bialg::split_twist(n, &c.r_hif).map_err(|e| e.to_string())?;
        let derived = c.r_hif.coeff(&(GlnIndex::H(0).flatten(n), GlnIndex::I(0).flatten(n)));
        let alternative = gln::alternative_cartan_coefficient();
        let mut notes = vec![format!("derived H_i^I_i coefficient: {}", derived)];
        let report = coboundary_mismatch(&c.hif, &c.r_hif, &c.delta_hif)?;
        if !derived.is_zero() && derived != alternative {
            let rescaled = r_s.plus(&r_t.scaled(&(&alternative / &derived)));
            let alt_mismatch = coboundary_mismatch(&c.hif, &rescaled, &c.delta_hif)?;
            notes.push(format!(
                "discrepancy: the {} normalization differs from the derived {}; with it the coboundary misses delta_D at {} generators",
                alternative,
                derived,
                alt_mismatch.len()
            ));
        }
        Ok((report, notes))
    });
    push("chain-embedding", &|| {
        let big = gln::build_gln_tn(n + 1).map_err(|e| e.to_string())?;
        let big_delta = gln::gln_cocommutator(n + 1).map_err(|e| e.to_string())?;
        let report = gln::check_bialgebra_embedding(&c.hif, &c.delta_hif, &big, &big_delta, &gln::chain_images(n))
            .map_err(|e| e.to_string())?;
        Ok((report.violations(), vec![format!("gl({}) + t_{} into gl({}) + t_{}", n, n, n + 1, n + 1)]))
    });
    push("twist-split", &|| {
        let (r_s, r_t) = bialg::split_twist(n, &c.r_hif).map_err(|e| e.to_string())?;
        let closed = gln::delta_closed_form(n).map_err(|e| e.to_string())?;
        let central = |(a, b): (usize, usize)| {
            [a, b].iter().any(|&k| matches!(GlnIndex::unflatten(n, k), GlnIndex::I(_)))
        };
        let delta_s = bialg::coboundary(&c.hif, &r_s).map_err(|e| e.to_string())?;
        let delta_t = bialg::coboundary(&c.hif, &r_t).map_err(|e| e.to_string())?;
        let mut report = ViolationReport::new();
        for p in 0..c.hif.dim() {
            let expected = closed.get(p);
            let ds = delta_s.get(p).minus(&expected.filter(|&k| !central(k)));
            if !ds.is_zero() {
                report.push(Violation::two_tensor(vec![p], &ds).with_note("r_s"));
            }
            let dt = delta_t.get(p).minus(&expected.filter(|&k| central(k)));
            if !dt.is_zero() {
                report.push(Violation::two_tensor(vec![p], &dt).with_note("r_t"));
            }
            let q = gln::identify_central(n, &delta_t.get(p));
            if !q.is_zero() {
                report.push(Violation::two_tensor(vec![p], &q).with_note("quotient"));
            }
        }
        let notes = vec![
            "r_t is trivial once all I_i are identified".into(),
            "the twist type is recorded here as an unverified remark".into(),
        ];
        Ok((report, notes))
    });
    push("self-duality", &|| {
        let images = gln::self_duality_images(n);
        liealg::check_homomorphism(c.triple.s_plus(), c.triple.s_minus(), &images)
            .map(|r| (r, vec!["X_i -> -x^i, Y_ij -> -y^ij".into()]))
            .map_err(|e| e.to_string())
    });
    VerificationReport::new(command, checks)
}

pub fn verify_gln(n: usize, record_timing: bool) -> Result<VerificationReport, GlnError> {
    Ok(run_suite(&format!("verify --n {}", n), &SuiteInput::gln(n)?, record_timing))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes_for_small_ranks() {
        for n in 1..=3 {
            let report = verify_gln(n, false).unwrap();
            assert!(report.passed(), "n = {}: {}", n, report.to_text(true));
            assert_eq!(report.checks.len(), CHECK_NAMES.len());
            let names: Vec<&str> = report.checks.iter().map(|c| c.name.as_str()).collect();
            assert_eq!(names, CHECK_NAMES);
        }
    }

    #[test]
    fn json_is_deterministic_and_sorted() {
        let a = verify_gln(2, false).unwrap().to_json();
        let b = verify_gln(2, false).unwrap().to_json();
        assert_eq!(a, b);
        let value: serde_json::Value = serde_json::from_str(&a).unwrap();
        let keys: Vec<&String> = value.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["checks", "command", "schema", "tool_version"]);
        let check_keys: Vec<&String> = value["checks"][0].as_object().unwrap().keys().collect();
        assert_eq!(check_keys, ["counterexamples", "millis", "name", "notes", "status"]);
        assert_eq!(value["schema"], SCHEMA);
    }

    #[test]
    fn normalization_note_reports_discrepancy() {
        let report = verify_gln(2, false).unwrap();
        let notes = &report.check("rmatrix-normalization").unwrap().notes;
        assert!(notes[0].ends_with("1/2*i"), "{:?}", notes);
        assert!(notes.iter().any(|n| n.starts_with("discrepancy") && n.contains("1/4*i")));
    }

    #[test]
    fn incompatible_input_fails() {
        let mut input = SuiteInput::gln(2).unwrap();
        let mut tensor = input.s_minus.tensor().clone();
        tensor.set(0, 1, crate::Vector::basis(2)).unwrap();
        input.s_minus = LieAlgebra::new(input.s_minus.labels().to_vec(), tensor).unwrap();
        let report = run_suite("test", &input, false);
        assert!(!report.passed());
        assert!(!report.check("compatibility").unwrap().passed());
    }

    #[test]
    fn wrong_rank_reports_errors() {
        let mut input = SuiteInput::gln(2).unwrap();
        input.n = 3;
        let report = run_suite("test", &input, false);
        assert!(report.checks.iter().all(|c| !c.passed()));
    }
}
