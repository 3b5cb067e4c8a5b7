//! The full verification run behind `qgft verify`.

use std::time::Instant;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::engine::algebra::slice_span;
use crate::engine::{
    check_coassociativity, check_sharp, closure, haar_vectors, pontryagin_check, slice_consistency, CheckReport, MultiplicativeUnitary,
    QuantumGroupPair, Side,
};
use crate::fourier::{
    check_convolution_agreement, check_ft_pairing, check_gns_transport, check_inversion, check_pairing_axioms, check_plancherel, convolve,
    convolve_dual, fourier, inverse_fourier, pairing, PairingSample,
};
use crate::group::FiniteGroup;
use crate::linalg::{random, subspace_equal, ComplexMatrix, Functional, SpanBasis, Tolerance};
use crate::models::{dft_compare, GroupFunction, GroupModel};

pub const SUITE_VERSION: &str = "1";
pub const DEFAULT_SEED: u64 = 20_240_917;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SuiteConfig {
    pub tol: Tolerance,
    pub seed: u64,
    /// Random draws per sampled check.
    pub samples: usize,
    /// Report every `elapsed_ms` as zero, making reports byte-identical
    /// across runs.
    pub deterministic: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            tol: Tolerance::default(),
            seed: DEFAULT_SEED,
            samples: 20,
            deterministic: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub name: String,
    pub pass: bool,
    pub deviation: f64,
    pub tolerance: f64,
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub model: String,
    pub seed: u64,
    pub suite_version: String,
    pub checks: Vec<CheckEntry>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<&CheckEntry> {
        self.checks.iter().find(|c| !c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&CheckEntry> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is plain data")
    }
}

/// What to verify: a group (closed-form parts) or a bare unitary (every
/// part derived by the generic engine).
#[derive(Clone, Debug)]
pub enum ModelSource {
    Group(FiniteGroup),
    Unitary(MultiplicativeUnitary),
}

struct Runner {
    config: SuiteConfig,
    checks: Vec<CheckEntry>,
}

impl Runner {
    /// Runs one check and records it; an `Err` is recorded as a failure
    /// with an unbounded deviation. Returns whether it passed.
    fn run(&mut self, name: &str, f: impl FnOnce() -> Result<CheckReport, String>) -> bool {
        let start = Instant::now();
        let outcome = f();
        let elapsed_ms = if self.config.deterministic {
            0.0
        } else {
            start.elapsed().as_secs_f64() * 1e3
        };
        let report = outcome.unwrap_or(CheckReport {
            pass: false,
            deviation: f64::MAX,
            tolerance: 0.0,
        });
        // JSON has no infinities or NaN
        let deviation = if report.deviation.is_finite() { report.deviation } else { f64::MAX };
        self.checks.push(CheckEntry {
            name: name.to_string(),
            pass: report.pass,
            deviation,
            tolerance: report.tolerance,
            elapsed_ms,
        });
        report.pass
    }
}

fn err<E: ToString>(e: E) -> String {
    e.to_string()
}

/// Runs the suite in a fixed order. A failure that leaves nothing to check
/// (unitarity, pentagon, construction of the pair) ends the run early.
pub fn verify(model: &str, source: &ModelSource, config: SuiteConfig) -> VerificationReport {
    let mut runner = Runner {
        config,
        checks: Vec::new(),
    };
    let tol = config.tol;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    let derived;
    let (mu, group_model) = match source {
        ModelSource::Group(g) => (None, Some(GroupModel::build(g.clone()))),
        ModelSource::Unitary(mu) => (Some(mu), None),
    };
    let group = group_model.as_ref();
    let qg: &QuantumGroupPair = if let Some(group_model) = group {
        let mu = group_model.qg().mu();
        runner.run("unitarity", || Ok(mu.check_unitarity(tol)));
        runner.run("pentagon", || mu.check_pentagon(tol).map_err(err));
        for (name, side) in [("algebra_closure_m", Side::Primal), ("algebra_closure_mhat", Side::Dual)] {
            runner.run(name, || Ok(closure(group_model.qg().basis(side)).check(tol)));
        }
        group_model.qg()
    } else {
        let mu = mu.expect("unitary source");
        let unitary = runner.run("unitarity", || Ok(mu.check_unitarity(tol)));
        let pentagon = runner.run("pentagon", || mu.check_pentagon(tol).map_err(err));
        if !(unitary && pentagon) {
            return finish(model, runner);
        }
        let mut closed = true;
        for (name, side) in [("algebra_closure_m", Side::Primal), ("algebra_closure_mhat", Side::Dual)] {
            closed &= runner.run(name, || Ok(closure(&slice_span(mu, side, tol).map_err(err)?).check(tol)));
        }
        if !closed {
            return finish(model, runner);
        }
        let mut built = None;
        let ok = runner.run("quantum_group_pair", || {
            built = Some(QuantumGroupPair::from_unitary(mu.clone(), tol).map_err(err)?);
            Ok(CheckReport::exact(0.0))
        });
        if !ok {
            return finish(model, runner);
        }
        derived = built.expect("constructed");
        &derived
    };
    let mu = qg.mu();
    let n = qg.n();

    runner.run("w_in_m_tensor_mhat", || qg.check_w_membership(tol).map_err(err));
    for (name, side) in [("coassociativity_m", Side::Primal), ("coassociativity_mhat", Side::Dual)] {
        runner.run(name, || check_coassociativity(mu, side, qg.basis(side), tol).map_err(err));
    }
    for (name, side) in [("left_invariance_m", Side::Primal), ("left_invariance_mhat", Side::Dual)] {
        runner.run(name, || Ok(qg.weight(side).check_left_invariance(mu, side, qg.basis(side), tol)));
    }
    for (name, side) in [("right_invariance_m", Side::Primal), ("right_invariance_mhat", Side::Dual)] {
        runner.run(name, || {
            Ok(qg
                .weight(side)
                .check_right_invariance(mu, side, qg.basis(side), &qg.antipode(side).map, tol))
        });
    }
    for (name, side) in [("gns_consistency_m", Side::Primal), ("gns_consistency_mhat", Side::Dual)] {
        runner.run(name, || Ok(qg.weight(side).check_gns(qg.basis(side), tol)));
    }

    let omegas: Vec<Functional> = (0..config.samples).map(|_| random_functional(&mut rng, n)).collect();
    runner.run("gns_phihat", || qg.check_phihat(&omegas, tol).map_err(err));
    runner.run("gns_phihat_dual", || qg.check_phihat_dual(&omegas, tol).map_err(err));
    let pairs: Vec<(Functional, Functional)> = (0..config.samples)
        .map(|_| (random_functional(&mut rng, n), random_functional(&mut rng, n)))
        .collect();
    runner.run("subalgebra_product_laws", || qg.check_product_laws(&pairs, tol).map_err(err));

    for (name, side) in [("antipode_slices_m", Side::Primal), ("antipode_slices_mhat", Side::Dual)] {
        runner.run(name, || {
            Ok(slice_consistency(mu, side, qg.basis(side), &qg.antipode(side).map, tol))
        });
    }
    runner.run("antipode_anti_multiplicative", || {
        let a = qg.s().check_anti_multiplicative(qg.m(), tol);
        let b = qg.shat().check_anti_multiplicative(qg.mhat(), tol);
        Ok(if a.deviation - a.tolerance >= b.deviation - b.tolerance {
            a
        } else {
            b
        })
    });
    runner.run("antipode_square", || {
        let dev = qg.s().square_deviation().max(qg.shat().square_deviation());
        Ok(match group {
            Some(_) => CheckReport::exact(dev),
            None => CheckReport::new(dev, 1.0, tol),
        })
    });
    let sharp_omegas: Vec<Functional> = (0..config.samples).map(|_| random_functional(&mut rng, n)).collect();
    let sharp_reports = check_sharp(mu, &sharp_omegas, &qg.s().map, qg.m(), tol).map_err(err);
    runner.run("sharp_adjoint", || sharp_reports.clone().map(|r| r.0));
    runner.run("sharp_involution", || sharp_reports.map(|r| r.1));

    runner.run("fourier_gns_transport", || Ok(check_gns_transport(qg, tol)));
    runner.run("fourier_inversion", || Ok(check_inversion(qg).check(tol)));
    let elements: Vec<ComplexMatrix> = (0..config.samples).map(|_| random_element(&mut rng, qg.m())).collect();
    runner.run("plancherel", || check_plancherel(qg, &elements, tol).map_err(err));
    for (name, side) in [
        ("convolution_agreement_m", Side::Primal),
        ("convolution_agreement_mhat", Side::Dual),
    ] {
        let pairs: Vec<(ComplexMatrix, ComplexMatrix)> = (0..config.samples)
            .map(|_| (random_element(&mut rng, qg.basis(side)), random_element(&mut rng, qg.basis(side))))
            .collect();
        runner.run(name, || check_convolution_agreement(qg, side, &pairs, tol).map_err(err));
    }

    let pairing_inputs: Vec<(ComplexMatrix, ComplexMatrix)> = (0..config.samples)
        .map(|_| (random_element(&mut rng, qg.m()), random_element(&mut rng, qg.mhat())))
        .collect();
    runner.run("pairing_spread", || {
        let mut spread = 0.0f64;
        let mut scale = 0.0f64;
        for (a, b) in &pairing_inputs {
            let p = pairing(qg, b, a, tol).map_err(err)?;
            spread = spread.max(p.spread);
            scale = scale.max(p.value().norm());
        }
        Ok(CheckReport::new(spread, scale, tol))
    });
    runner.run("pairing_ft_inner_product", || {
        let mut worst: Option<CheckReport> = None;
        for (a, b) in &pairing_inputs {
            let r = check_ft_pairing(qg, a, b, tol).map_err(err)?;
            if worst.map_or(true, |w| r.deviation - r.tolerance > w.deviation - w.tolerance) {
                worst = Some(r);
            }
        }
        Ok(worst.unwrap_or(CheckReport::exact(0.0)))
    });
    let samples: Vec<PairingSample> = (0..config.samples)
        .map(|_| PairingSample {
            omega1: random_functional(&mut rng, n),
            omega2: random_functional(&mut rng, n),
            theta1: random_functional(&mut rng, n),
            theta2: random_functional(&mut rng, n),
        })
        .collect();
    let axioms = check_pairing_axioms(qg, &samples, tol).map_err(err);
    for (k, name) in ["pairing_axiom_1", "pairing_axiom_2", "pairing_axiom_3"].into_iter().enumerate() {
        runner.run(name, || axioms.clone().map(|r| r[k]));
    }
    runner.run("pontryagin", || {
        let report = pontryagin_check(mu, qg.m(), qg.mhat(), tol.scaled(100.0)).map_err(err)?;
        Ok(CheckReport::with_tolerance(report.deviation(), 100.0 * tol.absolute))
    });

    if let Some(model) = group {
        group_checks(&mut runner, model, &mut rng);
    }
    finish(model, runner)
}

fn finish(model: &str, runner: Runner) -> VerificationReport {
    VerificationReport {
        model: model.to_string(),
        seed: runner.config.seed,
        suite_version: SUITE_VERSION.to_string(),
        checks: runner.checks,
    }
}

/// Closed-form statements about group models, plus agreement of the generic
/// engine with the closed forms.
fn group_checks(runner: &mut Runner, model: &GroupModel, rng: &mut ChaCha8Rng) {
    let tol = runner.config.tol;
    let qg = model.qg();
    let n = model.order();
    let count = runner.config.samples;
    let functions: Vec<(GroupFunction, GroupFunction)> = (0..count).map(|_| (random_function(rng, n), random_function(rng, n))).collect();

    runner.run("group_fourier_embedding", || {
        let mut dev = 0.0f64;
        let mut scale = 0.0f64;
        for (a, b) in &functions {
            let la = model.l(a).map_err(err)?;
            let pib = model.pi(b).map_err(err)?;
            dev = dev.max(fourier(qg, &model.pi(a).map_err(err)?, tol).map_err(err)?.max_abs_diff(&la));
            dev = dev.max(inverse_fourier(qg, &model.l(b).map_err(err)?, tol).map_err(err)?.max_abs_diff(&pib));
            scale = scale.max(la.max_abs()).max(pib.max_abs());
        }
        Ok(CheckReport::new(dev, scale, tol))
    });
    runner.run("group_plancherel_sum", || {
        let mut dev = 0.0f64;
        let mut scale = 0.0f64;
        for (a, _) in &functions {
            let f = fourier(qg, &model.pi(a).map_err(err)?, tol).map_err(err)?;
            let lhs = qg.phihat().evaluate(&f.adjoint().matmul(&f));
            let rhs: f64 = a.values().iter().map(|z| z.norm_sqr()).sum();
            dev = dev.max((lhs - Complex64::new(rhs, 0.0)).norm());
            scale = scale.max(rhs);
        }
        Ok(CheckReport::new(dev, scale, tol))
    });
    runner.run("group_convolution_classical", || {
        let mut dev = 0.0f64;
        let mut scale = 0.0f64;
        for (a, c) in &functions {
            let conv = convolve(qg, &model.pi(a).map_err(err)?, &model.pi(c).map_err(err)?, tol).map_err(err)?;
            let expected = model.classical_convolution(a, c);
            dev = dev.max(model.function_of_pi(&conv).max_abs_diff(&expected));
            let dual = convolve_dual(qg, &model.l(a).map_err(err)?, &model.l(c).map_err(err)?, tol).map_err(err)?;
            let pointwise = model.pointwise_product(a, c);
            dev = dev.max(model.function_of_l(&dual).max_abs_diff(&pointwise));
            scale = scale
                .max(expected.values().iter().map(|z| z.norm()).fold(0.0, f64::max))
                .max(pointwise.values().iter().map(|z| z.norm()).fold(0.0, f64::max));
        }
        Ok(CheckReport::new(dev, scale, tol))
    });
    runner.run("group_pairing_sum", || {
        let mut dev = 0.0f64;
        let mut scale = 0.0f64;
        for (a, b) in &functions {
            let p = pairing(qg, &model.l(b).map_err(err)?, &model.pi(a).map_err(err)?, tol).map_err(err)?;
            let sum = model.pairing_sum(a, b);
            for v in [p.via_inverse, p.via_forward, p.via_w] {
                dev = dev.max((v - sum).norm());
            }
            scale = scale.max(sum.norm());
        }
        Ok(CheckReport::new(dev, scale, tol))
    });
    runner.run("group_antipode_square_exact", || {
        Ok(CheckReport::exact(model.antipode_square_failures() as f64))
    });
    runner.run("generic_engine_agreement", || generic_agreement(model, tol).map_err(err));
    if model.group().is_abelian() {
        runner.run("dft_oracle", || {
            let mut worst = CheckReport::exact(0.0);
            for (a, _) in &functions {
                let r = dft_compare(model, a, tol).map_err(err)?.check(tol);
                if r.deviation - r.tolerance > worst.deviation - worst.tolerance {
                    worst = r;
                }
            }
            Ok(worst)
        });
    }
}

/// Derives `M`, `M̂`, the Haar vectors and both antipodes from the
/// permutation `W` alone and compares them with the closed forms.
fn generic_agreement(model: &GroupModel, tol: Tolerance) -> Result<CheckReport, crate::engine::EngineError> {
    let qg = model.qg();
    let generic = QuantumGroupPair::from_unitary(qg.mu().clone(), tol)?;
    let mut dev = 0.0f64;
    for side in [Side::Primal, Side::Dual] {
        dev = dev.max(subspace_equal(generic.basis(side), qg.basis(side), tol)?.deviation);
        for x in qg.basis(side).elements() {
            let exact = qg.antipode(side).map.apply(qg.basis(side), x);
            let derived = generic.antipode(side).map.apply(generic.basis(side), x);
            dev = dev.max(exact.max_abs_diff(&derived));
        }
    }
    let (phi, phihat) = haar_vectors(qg.mu())?;
    for (a, b) in [(phi.xi(), qg.phi().xi()), (phihat.xi(), qg.phihat().xi())] {
        dev = dev.max(a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max));
    }
    Ok(CheckReport::new(dev, 1.0, tol))
}

pub fn random_functional(rng: &mut ChaCha8Rng, n: usize) -> Functional {
    Functional::from_density(random::matrix(rng, n, n)).expect("square density")
}

/// Gaussian coordinates in an orthonormal basis.
pub fn random_element(rng: &mut ChaCha8Rng, basis: &SpanBasis) -> ComplexMatrix {
    basis.reconstruct(&random::vector(rng, basis.dim()))
}

pub fn random_function(rng: &mut ChaCha8Rng, n: usize) -> GroupFunction {
    GroupFunction::new(random::vector(rng, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_reports_are_identical() {
        let config = SuiteConfig {
            deterministic: true,
            samples: 3,
            ..SuiteConfig::default()
        };
        let source = ModelSource::Group(FiniteGroup::cyclic(3).unwrap());
        let a = verify("cyclic:3", &source, config).to_json();
        let b = verify("cyclic:3", &source, config).to_json();
        assert_eq!(a, b);
    }

    #[test]
    fn non_pentagon_unitary_stops_after_pentagon() {
        let mu = MultiplicativeUnitary::from_permutation(2, vec![0, 1, 3, 2]).unwrap();
        let broken = MultiplicativeUnitary::from_dense(2, ComplexMatrix::permutation(&[0, 2, 1, 3])).unwrap();
        assert!(verify("z2", &ModelSource::Unitary(mu), SuiteConfig::default()).passed());
        let report = verify("broken", &ModelSource::Unitary(broken), SuiteConfig::default());
        assert_eq!(report.first_failure().unwrap().name, "pentagon");
        assert_eq!(report.checks.len(), 2);
    }
}
