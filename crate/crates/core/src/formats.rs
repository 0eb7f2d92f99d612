//! File formats consumed by the command-line front end.
//!
//! - Finite kernels: CSV, `m` rows by `m` columns of nonnegative
//!   decimals.
//! - Continuous specs: JSON with either explicit `alpha` / `beta` /
//!   `kernel` arrays or named generators (`alpha_gen`, `beta_gen`,
//!   `kernel_gen`).
//!
//! Generators: `const:c` (constant value), `linear` (`alpha(s) = 0`
//! when used for alpha, `beta(s) = s` when used for beta), `product`
//! (`k(s,t) = s*t`, kernel only), and `uniform_random:seed:lo:hi`
//! (i.i.d. uniform values on `[lo, hi)` from the given seed).

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::operators::ContinuousKernelSpec;
use crate::operators::FiniteKernel;
use crate::sampling::stream_rng;
use crate::space::{Domain, SampledFunction};

/// Parse a finite kernel from CSV text. Rows must be square and every
/// field a nonnegative decimal; diagnostics name the offending row.
pub fn parse_finite_kernel_csv(text: &str) -> Result<FiniteKernel> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::Parse(format!("kernel CSV row {}: {e}", i + 1)))?;
        let mut row = Vec::with_capacity(record.len());
        for (j, field) in record.iter().enumerate() {
            let value: f64 = field.parse().map_err(|_| {
                Error::Parse(format!(
                    "kernel CSV row {}, column {}: expected a decimal, got {field:?}",
                    i + 1,
                    j + 1
                ))
            })?;
            row.push(value);
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Parse("kernel CSV is empty".into()));
    }
    let m = rows.len();
    for (i, row) in rows.iter().enumerate() {
        if row.len() != m {
            return Err(Error::Parse(format!(
                "kernel CSV row {} has {} columns, expected {m} (square matrix)",
                i + 1,
                row.len()
            )));
        }
    }
    FiniteKernel::from_rows(rows).map_err(|e| Error::Parse(e.to_string()))
}

/// Raw JSON shape of a continuous spec file.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContinuousSpecFile {
    pub a: f64,
    pub n: usize,
    #[serde(default)]
    pub alpha: Option<Vec<f64>>,
    #[serde(default)]
    pub alpha_gen: Option<String>,
    #[serde(default)]
    pub beta: Option<Vec<f64>>,
    #[serde(default)]
    pub beta_gen: Option<String>,
    #[serde(default)]
    pub kernel: Option<Vec<Vec<f64>>>,
    #[serde(default)]
    pub kernel_gen: Option<String>,
}

/// Which slot of the spec a generator fills; `linear` and `product`
/// are slot-dependent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Slot {
    Alpha,
    Beta,
    Kernel,
}

impl Slot {
    fn name(self) -> &'static str {
        match self {
            Slot::Alpha => "alpha",
            Slot::Beta => "beta",
            Slot::Kernel => "kernel",
        }
    }
}

fn generate_values(gen: &str, slot: Slot, grid: &Domain) -> Result<Vec<f64>> {
    let n = grid.size();
    let count = if slot == Slot::Kernel { n * n } else { n };
    let parts: Vec<&str> = gen.split(':').collect();
    match parts.as_slice() {
        ["const", c] => {
            let value: f64 = c
                .parse()
                .map_err(|_| Error::Parse(format!("const generator needs a decimal, got {c:?}")))?;
            Ok(vec![value; count])
        }
        ["linear"] => match slot {
            Slot::Alpha => Ok(vec![0.0; n]),
            Slot::Beta => Ok((0..n).map(|i| grid.point(i).expect("grid")).collect()),
            Slot::Kernel => Err(Error::Parse(
                "generator 'linear' applies to alpha or beta, not the kernel".into(),
            )),
        },
        ["product"] => match slot {
            Slot::Kernel => Ok((0..n * n)
                .map(|idx| {
                    grid.point(idx / n).expect("grid") * grid.point(idx % n).expect("grid")
                })
                .collect()),
            _ => Err(Error::Parse(format!(
                "generator 'product' applies to the kernel, not {}",
                slot.name()
            ))),
        },
        ["uniform_random", seed, lo, hi] => {
            let seed: u64 = seed.parse().map_err(|_| {
                Error::Parse(format!("uniform_random needs an integer seed, got {seed:?}"))
            })?;
            let lo: f64 = lo.parse().map_err(|_| {
                Error::Parse(format!("uniform_random needs a decimal lower bound, got {lo:?}"))
            })?;
            let hi: f64 = hi.parse().map_err(|_| {
                Error::Parse(format!("uniform_random needs a decimal upper bound, got {hi:?}"))
            })?;
            if !(lo.is_finite() && hi.is_finite()) || lo > hi {
                return Err(Error::Parse(format!(
                    "uniform_random bounds must be finite with lo <= hi, got {lo}:{hi}"
                )));
            }
            let mut rng = stream_rng(seed, 0);
            Ok((0..count)
                .map(|_| lo + (hi - lo) * rand::Rng::gen::<f64>(&mut rng))
                .collect())
        }
        _ => Err(Error::Parse(format!(
            "unknown generator {gen:?}; expected const:c, linear, product, or uniform_random:seed:lo:hi"
        ))),
    }
}

impl ContinuousSpecFile {
    /// Resolve explicit arrays and generators into a validated spec.
    pub fn build(&self) -> Result<ContinuousKernelSpec> {
        let grid =
            Domain::grid(self.n, self.a).map_err(|e| Error::Parse(e.to_string()))?;
        let alpha = self.resolve_function(Slot::Alpha, &grid, &self.alpha, &self.alpha_gen)?;
        let beta = self.resolve_function(Slot::Beta, &grid, &self.beta, &self.beta_gen)?;
        let kernel = match (&self.kernel, &self.kernel_gen) {
            (Some(rows), None) => {
                let n = grid.size();
                if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                    return Err(Error::Parse(format!(
                        "kernel must be an {n}x{n} array of rows"
                    )));
                }
                rows.iter().flatten().copied().collect()
            }
            (None, Some(gen)) => generate_values(gen, Slot::Kernel, &grid)?,
            _ => {
                return Err(Error::Parse(
                    "spec needs exactly one of 'kernel' or 'kernel_gen'".into(),
                ))
            }
        };
        ContinuousKernelSpec::new(grid, alpha, beta, kernel)
            .map_err(|e| Error::Parse(e.to_string()))
    }

    fn resolve_function(
        &self,
        slot: Slot,
        grid: &Domain,
        explicit: &Option<Vec<f64>>,
        gen: &Option<String>,
    ) -> Result<SampledFunction> {
        let values = match (explicit, gen) {
            (Some(values), None) => values.clone(),
            (None, Some(gen)) => generate_values(gen, slot, grid)?,
            _ => {
                return Err(Error::Parse(format!(
                    "spec needs exactly one of '{0}' or '{0}_gen'",
                    slot.name()
                )))
            }
        };
        SampledFunction::new(grid.clone(), values).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Parse a continuous spec from JSON text and build the validated spec.
pub fn parse_continuous_spec_json(text: &str) -> Result<ContinuousKernelSpec> {
    let file: ContinuousSpecFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("spec JSON: {e}")))?;
    file.build()
}

/// Parse a sampled function from JSON text.
pub fn parse_function_json(text: &str) -> Result<SampledFunction> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("function JSON: {e}")))
}
