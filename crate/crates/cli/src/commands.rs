use std::fs;
use std::path::Path;

use anyhow::{bail, Context};
use kryest::bounds::estimate_spectrum;
use kryest::dense_funm::{FunctionKind, MatrixFunctionSpec};
use kryest::estimates::{expansion_terms, NodePolicy};
use kryest::harness::{run, BoundSettings, Method, RunResult, RunSettings, DEFAULT_MAX_CYCLES};
use kryest::krylov::{arnoldi, lanczos, DEFAULT_BREAKDOWN_TOL};
use kryest::oracle::reference_fav;
use kryest::record::ConvergenceRecord;
use kryest::sparse::{
    build_convection_diffusion, build_diag_spectrum, convection_diffusion_h, log_norm_neg, CsrMatrix, SpectralInterval,
    DEFAULT_LOG_NORM_TOL,
};
use kryest::vector::random_unit_vector;

use crate::args::{check_taus, CommonArgs, ExperimentArgs, ExperimentName, NodeChoice, RunArgs};
use crate::output::{tau_label, write_bounds_csv, write_trace_csv, write_vector};
use crate::plot::{log_chart, Series};

/// Default cap on the Krylov dimension of non-restarted runs.
const DEFAULT_MAX_DIM: usize = 1000;

/// Convection parameters of the nonsymmetric experiments; `delta_j = 2 zeta_j / h`.
const ZETA: (f64, f64) = (3.2, 128.0 / 30.0);

/// Whether every run reached the tolerance.
pub type Converged = bool;

fn settings(method: Method, spec: MatrixFunctionSpec, common: &CommonArgs) -> RunSettings {
    let default_cap = match method {
        Method::Restarted { .. } => DEFAULT_MAX_CYCLES,
        _ => DEFAULT_MAX_DIM,
    };
    let mut s = RunSettings::new(method, spec, common.eps, common.max_dim.unwrap_or(default_cap));
    s.estimator = common.estimator;
    s
}

fn execute(a: &CsrMatrix, v: &[f64], s: &RunSettings, oracle: bool) -> anyhow::Result<RunResult> {
    let reference = if oracle {
        Some(reference_fav(a, v, s.spec).context("computing the reference solution (try --oracle off)")?)
    } else {
        None
    };
    Ok(run(a, v, s, reference.as_ref())?)
}

fn summary(label: &str, r: &RunResult) -> String {
    let last = r.records.last();
    let step = last.map_or(0, |rec| rec.step);
    let status = if r.converged { "converged" } else { "not converged" };
    match last.and_then(|rec| rec.true_rel) {
        Some(t) => format!("{label}: {status} at dimension {step}, true_rel {t:.3e}"),
        None => format!(
            "{label}: {status} at dimension {step}, xi1_rel {:.3e}, xi2_rel {:.3e}",
            last.map_or(f64::NAN, |rec| rec.xi1_rel()),
            last.map_or(f64::NAN, |rec| rec.xi2_rel())
        ),
    }
}

fn write_svg(path: &Path, title: &str, records: &[ConvergenceRecord]) -> anyhow::Result<()> {
    let pick = |f: &dyn Fn(&ConvergenceRecord) -> Option<f64>| -> Vec<(f64, f64)> {
        records
            .iter()
            .filter_map(|r| f(r).map(|y| (r.step as f64, y)))
            .collect()
    };
    let mut series = vec![
        Series {
            label: "xi1_rel",
            color: "#1f77b4",
            points: pick(&|r| Some(r.xi1_rel())),
        },
        Series {
            label: "xi2_rel",
            color: "#2ca02c",
            points: pick(&|r| Some(r.xi2_rel())),
        },
    ];
    let truth = pick(&|r| r.true_rel);
    if !truth.is_empty() {
        series.push(Series {
            label: "true_rel",
            color: "#d62728",
            points: truth,
        });
    }
    let svg = log_chart(title, "Krylov dimension m", &series);
    fs::write(path, svg).with_context(|| format!("writing {}", path.display()))
}

struct ExperimentRun {
    label: String,
    /// 0 for the symmetric matrix, 1 for the convection-diffusion matrix.
    matrix: usize,
    method: Method,
    spec: MatrixFunctionSpec,
}

pub fn experiment(args: &ExperimentArgs) -> anyhow::Result<Converged> {
    args.common.validate()?;
    if let Some(t) = &args.tau {
        check_taus(t)?;
    }
    let n = if args.paper_scale { 14 } else { 8 };
    let h = convection_diffusion_h(n);
    let symmetric_taus = args.tau.clone().unwrap_or_else(|| vec![0.1, 0.5, 1.0]);
    let grid_taus = args.tau.clone().unwrap_or_else(|| vec![h * h]);

    let needs_symmetric = matches!(args.name, ExperimentName::Ex1 | ExperimentName::Ex3);
    let needs_grid = !matches!(args.name, ExperimentName::Ex1);
    let mut matrices: Vec<Option<(CsrMatrix, Vec<f64>)>> = vec![None, None];
    if needs_symmetric {
        let a = build_diag_spectrum(1001, SpectralInterval::new(0.0, 40.0)?)?;
        matrices[0] = Some((a, random_unit_vector(1001, args.common.seed)));
    }
    if needs_grid {
        let a = build_convection_diffusion(n, 2.0 * ZETA.0 / h, 2.0 * ZETA.1 / h)?;
        let v = vec![1.0; a.n()];
        matrices[1] = Some((a, v));
    }

    let mut runs = Vec::new();
    let mut add = |matrix: usize, method: Method, kind: FunctionKind, taus: &[f64]| {
        for &tau in taus {
            let spec = MatrixFunctionSpec { kind, tau };
            let which = if matrix == 0 {
                "diag1001".to_string()
            } else {
                format!("convdiff{n}")
            };
            let method_tag = method.to_string().replace(':', "");
            runs.push(ExperimentRun {
                label: format!(
                    "{}_{which}_{kind}_tau{}_{method_tag}",
                    experiment_tag(args.name),
                    tau_label(tau)
                ),
                matrix,
                method,
                spec,
            });
        }
    };
    match args.name {
        ExperimentName::Ex1 => add(0, Method::Lanczos, FunctionKind::Exp, &symmetric_taus),
        ExperimentName::Ex2 => add(1, Method::Arnoldi, FunctionKind::Exp, &grid_taus),
        ExperimentName::Ex3 => {
            for kind in [FunctionKind::Cos, FunctionKind::Sin] {
                add(0, Method::Lanczos, kind, &symmetric_taus);
                add(1, Method::Arnoldi, kind, &grid_taus);
            }
        }
        ExperimentName::Ex4 => {
            for block in [5, 10] {
                add(1, Method::Restarted { block }, args.function, &grid_taus);
            }
        }
    }

    fs::create_dir_all(&args.common.out).with_context(|| format!("creating {}", args.common.out.display()))?;
    let oracle = args.common.oracle_or(true);
    let mut all_converged = true;
    for r in &runs {
        let (a, v) = matrices[r.matrix].as_ref().expect("matrix built above");
        let s = settings(r.method, r.spec, &args.common);
        let result = execute(a, v, &s, oracle)?;
        write_trace_csv(&args.common.out.join(format!("{}.csv", r.label)), &result.records)?;
        let title = format!("{} {} N={} {}", experiment_tag(args.name), r.spec, a.n(), r.method);
        write_svg(
            &args.common.out.join(format!("{}.svg", r.label)),
            &title,
            &result.records,
        )?;
        println!("{}", summary(&r.label, &result));
        all_converged &= result.converged;
    }
    Ok(all_converged)
}

fn experiment_tag(name: ExperimentName) -> &'static str {
    match name {
        ExperimentName::Ex1 => "ex1",
        ExperimentName::Ex2 => "ex2",
        ExperimentName::Ex3 => "ex3",
        ExperimentName::Ex4 => "ex4",
    }
}

fn run_label(a_slug: &str, spec: MatrixFunctionSpec, method: Method) -> String {
    format!(
        "{a_slug}_{}_tau{}_{}",
        spec.kind,
        tau_label(spec.tau),
        method.to_string().replace(':', "")
    )
}

pub fn approx(args: &RunArgs) -> anyhow::Result<Converged> {
    args.validate()?;
    let source = args.source()?;
    let a = source.build()?;
    let v = args.start_vector(a.n());
    let method = args.method_for(&a);
    fs::create_dir_all(&args.common.out).with_context(|| format!("creating {}", args.common.out.display()))?;
    let mut all_converged = true;
    for spec in args.specs() {
        let mut s = settings(method, spec, &args.common);
        // stop on the estimate; the reference only fills the true-error column
        s.stop_on_true_error = false;
        let result = execute(&a, &v, &s, args.common.oracle_or(false))?;
        let label = run_label(&source.slug(), spec, method);
        let out = &args.common.out;
        write_trace_csv(&out.join(format!("{label}.csv")), &result.records)?;
        write_vector(&out.join(format!("{label}.txt")), &result.approx)?;
        if args.terms > 0 {
            let steps = result.records.last().map_or(0, |r| r.step);
            write_expansion(
                args,
                &a,
                &v,
                method,
                spec,
                steps,
                &out.join(format!("{label}_expansion.csv")),
            )?;
        }
        println!("{}", summary(&label, &result));
        all_converged &= result.converged;
    }
    Ok(all_converged)
}

/// Norms of the first `args.terms` error-expansion terms after `steps` steps.
fn write_expansion(
    args: &RunArgs,
    a: &CsrMatrix,
    v: &[f64],
    method: Method,
    spec: MatrixFunctionSpec,
    steps: usize,
    path: &Path,
) -> anyhow::Result<()> {
    let dec = match method {
        Method::Arnoldi => arnoldi(a, v, steps, DEFAULT_BREAKDOWN_TOL)?,
        Method::Lanczos => lanczos(a, v, steps, true)?,
        Method::Restarted { .. } => bail!("the error expansion is not available for restarted runs"),
    };
    let policy = match args.nodes {
        NodeChoice::Confluent => NodePolicy::Confluent,
        NodeChoice::Ritz => NodePolicy::Ritz,
    };
    let nodes = policy.nodes(&dec, args.terms)?;
    let expansion = expansion_terms(a, &dec, spec, &nodes, args.terms)?;
    let mut text = String::from("k,node_re,node_im,term_norm\n");
    for (term, node) in expansion.terms.iter().zip(nodes.as_slice()) {
        text.push_str(&format!(
            "{},{:.9e},{:.9e},{:.9e}\n",
            term.k, node.re, node.im, term.term_norm
        ));
    }
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

pub fn bounds(args: &RunArgs) -> anyhow::Result<Converged> {
    args.validate()?;
    if args.function != FunctionKind::Exp {
        bail!("bounds are exponential-only");
    }
    let source = args.source()?;
    let a = source.build()?;
    let v = args.start_vector(a.n());
    let method = args.method_for(&a);
    if let Method::Restarted { .. } = method {
        bail!("bounds are available for arnoldi and lanczos runs only");
    }
    let mu2 = log_norm_neg(&a, DEFAULT_LOG_NORM_TOL)?;
    let spectrum = match method {
        Method::Lanczos => Some(estimate_spectrum(&a)?),
        _ => None,
    };
    fs::create_dir_all(&args.common.out).with_context(|| format!("creating {}", args.common.out.display()))?;
    let mut all_converged = true;
    for spec in args.specs() {
        let mut s = settings(method, spec, &args.common);
        s.bounds = Some(BoundSettings {
            mu2,
            spectrum,
            n_t: args.nt,
        });
        let result = execute(&a, &v, &s, args.common.oracle_or(false))?;
        let label = format!("{}_bounds", run_label(&source.slug(), spec, method));
        write_bounds_csv(&args.common.out.join(format!("{label}.csv")), &result.records)?;
        println!("{}", summary(&label, &result));
        all_converged &= result.converged;
    }
    Ok(all_converged)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn experiment_grid_matches_reference_parameters() {
        // at n = 14 the convection coefficients are the classic 96 and 128
        let h = convection_diffusion_h(14);
        assert!((2.0 * ZETA.0 / h - 96.0).abs() < 1e-12);
        assert!((2.0 * ZETA.1 / h - 128.0).abs() < 1e-12);
    }
}
