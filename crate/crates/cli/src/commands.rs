use std::fmt::Write as _;

use nfl_core::{
    build_constraint_class, closure, count_all_subsets, count_cup_subsets, count_histograms, cup_fraction,
    decompose, enumerate_algorithms, hypercube_neighborhood, is_cup, orbit, sequence_multiset, verify_nfl,
    witness_not_cup, Caps, ConstraintClass, CupStatus, Error, Neighborhood, PerformanceMeasure, SearchAlgorithm,
    SpaceSignature, ValueMetric,
};

use crate::error::CliError;
use crate::format::{emit_function_set, format_log10, write_fraction_csv, FractionRow, FunctionSetFile};

/// Seed used by `random` when neither `random:N` nor `--seed` is given.
pub const DEFAULT_SEED: u64 = 1;

fn signature(x: usize, y: usize) -> Result<SpaceSignature, CliError> {
    SpaceSignature::new(x, y).map_err(|e| CliError::Usage(e.to_string()))
}

pub fn cmd_count(x: usize, y: usize) -> Result<String, CliError> {
    let sig = signature(x, y)?;
    let cup = count_cup_subsets(sig)?;
    let all = count_all_subsets(sig)?;
    let fraction = cup_fraction(sig)?;
    let mut out = String::new();
    writeln!(out, "signature: {sig}").unwrap();
    writeln!(out, "histograms: {}", count_histograms(sig)).unwrap();
    writeln!(out, "cup subsets: {cup}").unwrap();
    writeln!(out, "all subsets: {all}").unwrap();
    writeln!(out, "log10 fraction: {}", format_log10(fraction.log10_value)).unwrap();
    Ok(out)
}

/// The fraction table as CSV, `y` outer and `x` inner.
pub fn cmd_fraction(x_min: usize, x_max: usize, ys: &[usize]) -> Result<String, CliError> {
    if x_min == 0 || x_min > x_max {
        return Err(CliError::Usage(format!("invalid x range {x_min}..{x_max}")));
    }
    if ys.is_empty() || ys.contains(&0) {
        return Err(CliError::Usage("y sizes must be a non-empty list of positive integers".into()));
    }
    let xs: Vec<usize> = (x_min..=x_max).collect();
    let rows: Vec<FractionRow> = nfl_core::fraction_table(&xs, ys)?
        .into_iter()
        .map(|c| {
            FractionRow::new(
                c.signature.domain_size(),
                c.signature.codomain_size(),
                c.num_histograms,
                &c.fraction,
            )
        })
        .collect();
    write_fraction_csv(&rows)
}

pub fn cmd_check(doc: &FunctionSetFile) -> String {
    let d = decompose(&doc.set);
    let verdict = match d.status() {
        CupStatus::Closed => "yes",
        CupStatus::NotClosed => "no",
        CupStatus::Vacuous => "yes (empty set)",
    };
    let mut out = String::new();
    writeln!(out, "c.u.p.: {verdict}; {}/{} classes complete", d.complete_count(), d.classes.len()).unwrap();
    for class in &d.classes {
        writeln!(out, "{class}").unwrap();
    }
    out
}

pub fn cmd_closure(doc: &FunctionSetFile, caps: &Caps) -> Result<String, CliError> {
    let closed = closure(&doc.set, caps)?;
    Ok(emit_function_set(&FunctionSetFile::new(closed)))
}

/// The orbit of the `index`-th function as listed in the file.
pub fn cmd_orbit(doc: &FunctionSetFile, index: usize, caps: &Caps) -> Result<String, CliError> {
    let f = doc.listed.get(index).ok_or_else(|| {
        CliError::Usage(format!("function index {index} out of range, file lists {}", doc.listed.len()))
    })?;
    Ok(emit_function_set(&FunctionSetFile::new(orbit(f, caps)?)))
}

/// The neighborhood from `--hypercube`, else from the file.
pub fn resolve_neighborhood(
    doc: &FunctionSetFile,
    hypercube: Option<u32>,
    caps: &Caps,
) -> Result<Option<Neighborhood>, CliError> {
    let Some(bits) = hypercube else {
        return Ok(doc.neighborhood.clone());
    };
    let nb = hypercube_neighborhood(bits, caps)?;
    if nb.size() != doc.signature().domain_size() {
        return Err(CliError::Usage(format!(
            "--hypercube {bits} gives {} points, domain_size is {}",
            nb.size(),
            doc.signature().domain_size()
        )));
    }
    Ok(Some(nb))
}

/// Parses `lex`, `rev`, `random`, `random:SEED`, `greedy` (comma separated) or `all`.
pub fn parse_algorithms(
    spec: &str,
    signature: SpaceSignature,
    m: usize,
    seed: Option<u64>,
    neighborhood: Option<&Neighborhood>,
    caps: &Caps,
) -> Result<Vec<SearchAlgorithm>, CliError> {
    if spec.trim() == "all" {
        return Ok(enumerate_algorithms(signature, m, caps)?.collect());
    }
    let mut algs = Vec::new();
    for name in spec.split(',').map(str::trim) {
        let alg = match name {
            "lex" | "lexicographic" => SearchAlgorithm::Lexicographic,
            "rev" | "reverse" => SearchAlgorithm::ReverseLexicographic,
            "random" => SearchAlgorithm::SeededRandom {
                seed: seed.unwrap_or(DEFAULT_SEED),
            },
            "greedy" => SearchAlgorithm::GreedyNeighbor(neighborhood.cloned().ok_or_else(|| {
                CliError::Usage("greedy needs a neighborhood in the file or --hypercube".into())
            })?),
            _ => match name.strip_prefix("random:") {
                Some(s) => SearchAlgorithm::SeededRandom {
                    seed: s.parse().map_err(|_| CliError::Usage(format!("bad seed in {name:?}")))?,
                },
                None => return Err(CliError::Usage(format!("unknown algorithm {name:?}"))),
            },
        };
        algs.push(alg);
    }
    Ok(algs)
}

pub fn cmd_nfl(doc: &FunctionSetFile, m: usize, algorithms: &[SearchAlgorithm]) -> Result<String, CliError> {
    let n = doc.signature().domain_size();
    if m == 0 || m > n {
        return Err(CliError::Usage(format!("m must be in 1..={n}")));
    }
    if algorithms.is_empty() {
        return Err(CliError::Usage("no algorithms given".into()));
    }
    let measures = [
        PerformanceMeasure::MinimumValue,
        PerformanceMeasure::SumOfValues,
        PerformanceMeasure::ValueAtStep(m),
    ];
    let multisets = algorithms
        .iter()
        .map(|a| sequence_multiset(a, &doc.set, m))
        .collect::<Result<Vec<_>, Error>>()?;

    let mut out = String::new();
    writeln!(out, "signature: {}, functions: {}, m: {m}", doc.signature(), doc.set.len()).unwrap();
    for (i, (a, ms)) in algorithms.iter().zip(&multisets).enumerate() {
        writeln!(out, "a{i} {}", a.label()).unwrap();
        for c in measures {
            writeln!(out, "  {c}: {}", ms.performance_table(c)?).unwrap();
        }
    }
    out.push_str("multiset equality:\n");
    for (i, row) in multisets.iter().enumerate() {
        let cells: Vec<&str> = multisets.iter().map(|other| if row == other { "=" } else { "x" }).collect();
        writeln!(out, "  a{i}: {}", cells.join(" ")).unwrap();
    }
    let report = verify_nfl(&doc.set, m, algorithms)?;
    let cup = if is_cup(&doc.set) { "yes" } else { "no" };
    match report.witness {
        None => writeln!(out, "all pairs equal; c.u.p.: {cup}").unwrap(),
        Some((a, b)) => writeln!(out, "witness pair found (a{a}, a{b}); c.u.p.: {cup}").unwrap(),
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Steepness,
    Minima,
}

pub fn cmd_landscape(
    doc: &FunctionSetFile,
    neighborhood: Option<Neighborhood>,
    kind: BoundKind,
    bound: f64,
    caps: &Caps,
) -> Result<String, CliError> {
    let sig = doc.signature();
    let nb = neighborhood.ok_or_else(|| CliError::Usage("landscape needs a neighborhood (file or --hypercube)".into()))?;
    let (cc, label) = match kind {
        BoundKind::Steepness => {
            let metric: ValueMetric = doc
                .metric
                .clone()
                .ok_or_else(|| CliError::Usage("steepness needs a metric in the file".into()))?;
            (ConstraintClass::steepness(sig, nb, metric, bound)?, "steepness")
        }
        BoundKind::Minima => {
            if bound < 0.0 || bound.fract() != 0.0 {
                return Err(CliError::Usage(format!("minima bound must be a non-negative integer, got {bound}")));
            }
            (ConstraintClass::local_minima(sig, nb, bound as usize)?, "minima")
        }
    };
    let class = build_constraint_class(&cc, caps)?;
    let total = sig.function_count();
    let mut out = String::new();
    writeln!(out, "constraint: {label} < {bound} on {sig}").unwrap();
    if class.is_empty() {
        out.push_str("class size 0; c.u.p.: yes (empty class)\n");
        return Ok(out);
    }
    if num_bigint::BigUint::from(class.len()) == total {
        writeln!(out, "class = full space ({total}); c.u.p.: yes").unwrap();
        return Ok(out);
    }
    let cup = if is_cup(&class) { "yes" } else { "no" };
    writeln!(out, "class size {} of {total}; c.u.p.: {cup}", class.len()).unwrap();
    match witness_not_cup(&class, &cc, caps) {
        Ok(w) => writeln!(
            out,
            "witness: g={}, π={}, {label}(g∘π)={}",
            w.function, w.permutation, w.image_measure
        )
        .unwrap(),
        Err(Error::WitnessNotGuaranteed(reason)) => writeln!(out, "witness: none ({reason})").unwrap(),
        Err(e) => return Err(e.into()),
    }
    Ok(out)
}
