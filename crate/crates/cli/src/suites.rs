use std::time::Instant;

use clap::ValueEnum;
use serde_json::{json, Value};
use torelli_core::johnson::{
    claim51_check, claim52_closed_form, claim52_coefficient_with_cap, lemma42_scalar,
    psi2_fundamental, psi2_tensor, rho, sample_configurations, sigma, theorem1_witness_with_cap,
    JohnsonError, TrulyNestedFamily, CLAIM52_SIGN,
};
use torelli_core::reptheory::{
    decompose_with_cap, schur_weyl_check, weyl_dimension, IrrepLabel, Partition, RepError,
};
use torelli_core::tensor::{matchings, Shape, TensorError};
use torelli_core::{int, BigUint, Scalar, DEFAULT_TERM_CAP};

use crate::report::{decomposition, rational, Check, Status, VerificationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Top-weight dimension table.
    Table,
    /// Decompositions of `∧³H` and `∧²(∧³H)`.
    Decompose,
    /// Nonvanishing witnesses for the side-by-side configurations.
    Thm1,
    /// Nested-family scalars of the contraction pipeline.
    Lemma42,
    /// `n+1` contractions kill `ψₙ` on random configurations.
    Claim51,
    /// Traceless coefficient against its closed form.
    Claim52,
    /// Schur–Weyl identity for traceless tensors.
    Schurweyl,
    /// Invariance of `ψ₂` of the fundamental class.
    Psi2,
    All,
}

impl Suite {
    pub const EACH: [Suite; 8] = [
        Suite::Table,
        Suite::Decompose,
        Suite::Thm1,
        Suite::Lemma42,
        Suite::Claim51,
        Suite::Claim52,
        Suite::Schurweyl,
        Suite::Psi2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Table => "table",
            Suite::Decompose => "decompose",
            Suite::Thm1 => "thm1",
            Suite::Lemma42 => "lemma42",
            Suite::Claim51 => "claim51",
            Suite::Claim52 => "claim52",
            Suite::Schurweyl => "schurweyl",
            Suite::Psi2 => "psi2",
            Suite::All => "all",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteOptions {
    /// Seed for sampled configurations.
    pub seed: u64,
    /// Samples per configuration size.
    pub samples: usize,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    pub term_cap: u64,
    pub timings: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            seed: 0,
            samples: 20,
            jobs: None,
            term_cap: DEFAULT_TERM_CAP,
            timings: false,
        }
    }
}

/// Why a check produced no verdict.
enum Failure {
    Guard(String),
    Error(String),
}

impl From<TensorError> for Failure {
    fn from(e: TensorError) -> Self {
        match e {
            TensorError::TermCap { .. } => Failure::Guard(e.to_string()),
            e => Failure::Error(e.to_string()),
        }
    }
}

impl From<JohnsonError> for Failure {
    fn from(e: JohnsonError) -> Self {
        match e {
            JohnsonError::Tensor(t) => t.into(),
            e => Failure::Error(e.to_string()),
        }
    }
}

impl From<RepError> for Failure {
    fn from(e: RepError) -> Self {
        match e {
            RepError::Tensor(t) => t.into(),
            RepError::TermCap { .. } | RepError::Overflow => Failure::Guard(e.to_string()),
            e => Failure::Error(e.to_string()),
        }
    }
}

impl From<torelli_core::reptheory::PartitionError> for Failure {
    fn from(e: torelli_core::reptheory::PartitionError) -> Self {
        Failure::Error(e.to_string())
    }
}

type Verdict = Result<(Value, bool), Failure>;
type Run = Box<dyn Fn(&SuiteOptions) -> Verdict + Send + Sync>;

struct CheckSpec {
    id: String,
    anchor: String,
    expected: Value,
    run: Run,
}

impl CheckSpec {
    fn new(
        id: impl Into<String>,
        anchor: &str,
        expected: Value,
        run: impl Fn(&SuiteOptions) -> Verdict + Send + Sync + 'static,
    ) -> CheckSpec {
        CheckSpec {
            id: id.into(),
            anchor: anchor.to_string(),
            expected,
            run: Box::new(run),
        }
    }

    fn execute(&self, opts: &SuiteOptions) -> Check {
        let start = Instant::now();
        let (status, computed) = match (self.run)(opts) {
            Ok((v, true)) => (Status::Pass, v),
            Ok((v, false)) => (Status::Fail, v),
            Err(Failure::Guard(m)) => (Status::Skipped, json!(format!("resource guard: {m}"))),
            Err(Failure::Error(m)) => (Status::Fail, json!(format!("error: {m}"))),
        };
        Check {
            id: self.id.clone(),
            anchor: self.anchor.clone(),
            status,
            expected: self.expected.clone(),
            computed,
            wall_time: opts
                .timings
                .then(|| format!("{:.3}s", start.elapsed().as_secs_f64())),
        }
    }
}

/// Run a suite; check order in the report is the declaration order.
pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> VerificationReport {
    let specs: Vec<CheckSpec> = match suite {
        Suite::All => Suite::EACH.iter().flat_map(|&s| specs(s, opts)).collect(),
        s => specs(s, opts),
    };
    VerificationReport::new(suite.name(), execute(&specs, opts))
}

#[cfg(feature = "parallel")]
fn execute(specs: &[CheckSpec], opts: &SuiteOptions) -> Vec<Check> {
    use rayon::prelude::*;
    let run = || specs.par_iter().map(|s| s.execute(opts)).collect();
    match opts.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map(|pool| pool.install(run))
            .unwrap_or_else(|_| specs.iter().map(|s| s.execute(opts)).collect()),
        None => run(),
    }
}

#[cfg(not(feature = "parallel"))]
fn execute(specs: &[CheckSpec], opts: &SuiteOptions) -> Vec<Check> {
    specs.iter().map(|s| s.execute(opts)).collect()
}

fn specs(suite: Suite, opts: &SuiteOptions) -> Vec<CheckSpec> {
    match suite {
        Suite::Table => table(),
        Suite::Decompose => decompositions(),
        Suite::Thm1 => thm1(),
        Suite::Lemma42 => lemma42(),
        Suite::Claim51 => claim51(opts),
        Suite::Claim52 => claim52(),
        Suite::Schurweyl => schurweyl(),
        Suite::Psi2 => psi2(),
        Suite::All => unreachable!("expanded by run_suite"),
    }
}

fn dim(p: &str, g: usize) -> Result<BigUint, Failure> {
    let p: Partition = p.parse()?;
    Ok(weyl_dimension(&IrrepLabel::new(p, g)?))
}

fn dim_sum(ps: &[&str], g: usize) -> Result<BigUint, Failure> {
    ps.iter().map(|p| dim(p, g)).sum()
}

/// Two significant figures in `d.de{exp}` form.
pub fn two_figures(x: &BigUint) -> String {
    let f: f64 = x.to_string().parse().unwrap_or(f64::INFINITY);
    format!("{f:.1e}")
}

const TABLE_N3: [&str; 5] = ["3,2^3", "3^2,1^3", "2^3,1^3", "2^2,1^5", "1^9"];

fn table() -> Vec<CheckSpec> {
    const ANCHOR: &str = "top-weight dimension table";
    let exact = |ps: &'static [&'static str], g: usize, want: u64| {
        move |_: &SuiteOptions| {
            let d = dim_sum(ps, g)?;
            Ok((json!(d.to_string()), d == BigUint::from(want)))
        }
    };
    vec![
        CheckSpec::new("table.n1.g3", ANCHOR, json!("14"), exact(&["1,1,1"], 3, 14)),
        CheckSpec::new(
            "table.n2.g6",
            ANCHOR,
            json!("19383"),
            exact(&["2,2,1,1", "1^6"], 6, 19383),
        ),
        CheckSpec::new("table.n3.g9", ANCHOR, json!("7.5e7"), |_| {
            let d = dim_sum(&TABLE_N3, 9)?;
            let rounded = two_figures(&d);
            Ok((json!(format!("{d} ≈ {rounded}")), rounded == "7.5e7"))
        }),
    ]
}

fn decomposition_check(
    id: &str,
    anchor: &str,
    shape: &'static str,
    g: usize,
    band: Option<u32>,
    want: &[&str],
) -> CheckSpec {
    let want: Vec<(Partition, u64)> = want
        .iter()
        .map(|e| {
            let (p, m) = e.rsplit_once(':').expect("entries are written p:m");
            (
                p.parse().expect("valid partition"),
                m.parse().expect("valid multiplicity"),
            )
        })
        .collect();
    let expected = decomposition(want.iter().map(|(p, m)| (p, *m)));
    CheckSpec::new(id, anchor, expected.clone(), move |opts| {
        let shape: Shape = shape.parse()?;
        let full = decompose_with_cap(&shape, g, opts.term_cap)?;
        let r = band.map_or_else(|| full.clone(), |w| full.band(w));
        let got = decomposition(r.sorted_entries());
        let ok = got == expected && full.dimension_matches();
        Ok((got, ok))
    })
}

fn decompositions() -> Vec<CheckSpec> {
    const W3: &str = "∧³H ≅ V_{1³} ⊕ V₁";
    let mut v: Vec<CheckSpec> = (3..=5)
        .map(|g| {
            decomposition_check(
                &format!("decompose.w3.g{g}"),
                W3,
                "wedge(1,w3)",
                g,
                None,
                &["1,1,1:1", "1:1"],
            )
        })
        .collect();
    v.push(decomposition_check(
        "decompose.wedge2_w3.g6.weight6",
        "top-weight irreducibles of ∧²(∧³H)",
        "wedge(2,w3)",
        6,
        Some(6),
        &["2,2,1,1:1", "1^6:1"],
    ));
    v.push(decomposition_check(
        "decompose.wedge2_h.g2",
        "derived",
        "wedge(2,H)",
        2,
        None,
        &["1,1:1", "0:1"],
    ));
    v
}

fn thm1() -> Vec<CheckSpec> {
    (1..=3)
        .map(|n| {
            let g = 3 * n;
            let target: Vec<String> = (0..n)
                .map(|i| format!("a{}∧a{}∧a{}", 3 * i + 1, 3 * i + 2, 3 * i + 3))
                .collect();
            let target = if n == 1 {
                target.concat()
            } else {
                format!("({})", target.join(")∧("))
            };
            let expected = json!(format!("{target}; no single contraction survives"));
            CheckSpec::new(
                format!("thm1.n{n}.g{g}"),
                "nonvanishing witness for ψₙ",
                expected,
                move |opts| {
                    let c = theorem1_witness_with_cap(n, g, opts.term_cap)?;
                    let image = if c.image_matches {
                        c.image.to_string()
                    } else {
                        format!("{} terms, differs from the target", c.image.len())
                    };
                    let contraction = if c.top_weight {
                        "no single contraction survives"
                    } else {
                        "a single contraction survives"
                    };
                    Ok((json!(format!("{image}; {contraction}")), c.passes()))
                },
            )
        })
        .collect()
}

fn lemma42() -> Vec<CheckSpec> {
    let cases: [(usize, i64, &str); 4] = [
        (1, 1, "nested-family scalar λ₁ = 1"),
        (2, -3, "nested-family scalar λ₂ = −3"),
        (3, -30, "derived"),
        (4, 450, "derived"),
    ];
    let mut v = Vec::new();
    for (n, lambda, anchor) in cases {
        for (name, family) in [
            ("sigma", sigma as fn(usize) -> _),
            ("rho", rho as fn(usize) -> _),
        ] {
            let f: fn(usize) -> Result<TrulyNestedFamily, JohnsonError> = family;
            let want = int(lambda);
            v.push(CheckSpec::new(
                format!("lemma42.{name}.n{n}"),
                anchor,
                rational(&want),
                move |_| {
                    let cert = lemma42_scalar(&f(n)?)?;
                    Ok((rational(&cert.scalar), cert.scalar == want))
                },
            ));
        }
    }
    v
}

fn claim51(opts: &SuiteOptions) -> Vec<CheckSpec> {
    const ANCHOR: &str = "ψₙ is killed by n+1 contractions";
    let mut v = vec![CheckSpec::new(
        "claim51.matchings.n3",
        "derived",
        json!("945"),
        |_| {
            // n = 3: four disjoint contractions among nine legs
            let k = matchings(9, 4).len();
            Ok((json!(k.to_string()), k == 945))
        },
    )];
    for (n, max_genus) in [(2usize, 6usize), (3, 9)] {
        let expected = json!(format!(
            "annihilated by every {} disjoint contractions",
            n + 1
        ));
        let samples = match sample_configurations(opts.seed, n, max_genus, opts.samples) {
            Ok(s) => s,
            Err(e) => {
                let msg = e.to_string();
                v.push(CheckSpec::new(
                    format!("claim51.n{n}"),
                    ANCHOR,
                    expected,
                    move |_| Err(Failure::Error(msg.clone())),
                ));
                continue;
            }
        };
        for (i, c) in samples.into_iter().enumerate() {
            v.push(CheckSpec::new(
                format!("claim51.n{n}.s{i:02}"),
                ANCHOR,
                expected.clone(),
                move |_| {
                    let ok = claim51_check(&c)?;
                    let verdict = if ok {
                        "annihilated"
                    } else {
                        "a contraction survives"
                    };
                    Ok((json!(format!("{verdict}: {c}")), ok))
                },
            ));
        }
    }
    v
}

/// Cases where the closed form is compared; the first three are the
/// acceptance cases.
pub const CLAIM52_CASES: [(usize, usize); 6] = [(2, 4), (2, 5), (3, 7), (2, 7), (3, 6), (3, 9)];

fn claim52() -> Vec<CheckSpec> {
    CLAIM52_CASES
        .iter()
        .map(|&(m, g)| {
            let want: Scalar = claim52_closed_form(m, g) * int(CLAIM52_SIGN);
            CheckSpec::new(
                format!("claim52.m{m}.g{g}"),
                "traceless coefficient (2m−2)^m/(g−1)^m",
                rational(&want),
                move |opts| {
                    let c = claim52_coefficient_with_cap(m, g, opts.term_cap)?;
                    Ok((rational(&c), c == want))
                },
            )
        })
        .collect()
}

fn schurweyl() -> Vec<CheckSpec> {
    let mut v = Vec::new();
    for g in [3usize, 4] {
        for k in 0..=3usize {
            let want = torelli_core::reptheory::schur_weyl_sum(k as u32, g);
            v.push(CheckSpec::new(
                format!("schurweyl.k{k}.g{g}"),
                "type C Schur–Weyl duality",
                json!(want.to_string()),
                move |_| {
                    let c = schur_weyl_check(k, g)?;
                    let got = format!("{} (insertion), {} (kernel)", c.by_insertion, c.by_kernel);
                    Ok((json!(got), c.holds()))
                },
            ));
        }
    }
    v
}

fn psi2() -> Vec<CheckSpec> {
    const ANCHOR: &str = "ψ₂ of the fundamental class is invariant";
    let mut v = vec![CheckSpec::new("psi2.g1", "derived", json!("0"), |_| {
        let t = psi2_tensor(1)?;
        Ok((
            json!(if t.is_zero() {
                "0".to_string()
            } else {
                t.to_string()
            }),
            t.is_zero(),
        ))
    })];
    for g in [2usize, 3] {
        v.push(CheckSpec::new(
            format!("psi2.g{g}"),
            ANCHOR,
            json!("nonzero, fixed by every generator"),
            move |_| {
                let c = psi2_fundamental(g)?;
                let nonzero = !c.tensor.is_zero();
                let got = if c.invariant() {
                    format!(
                        "{} terms, fixed by all {} generators",
                        c.tensor.len(),
                        c.generators_checked
                    )
                } else {
                    format!("moved by {}", c.moved_by.join(", "))
                };
                Ok((json!(got), nonzero && c.invariant()))
            },
        ));
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique() {
        let opts = SuiteOptions::default();
        let all: Vec<String> = Suite::EACH
            .iter()
            .flat_map(|&s| specs(s, &opts))
            .map(|s| s.id)
            .collect();
        let mut dedup = all.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), all.len());
    }

    #[test]
    fn rounding() {
        assert_eq!(two_figures(&BigUint::from(74_612_345u64)), "7.5e7");
        assert_eq!(two_figures(&BigUint::from(14u32)), "1.4e1");
    }

    #[test]
    fn table_suite_passes() {
        let r = run_suite(Suite::Table, &SuiteOptions::default());
        assert!(r.passes(), "{}", r.to_text());
    }
}
