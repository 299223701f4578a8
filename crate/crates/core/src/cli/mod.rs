//! Command-line front end. The binary is a thin wrapper around [`run`].
//!
//! Exit codes: 0 ran, 1 a theorem check or golden example failed, 2 input
//! error, 3 capacity guard.

pub mod description;
pub mod report;

use std::io::{Read, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};

use crate::error::{Error, Result};
use crate::finite_sets::{family_separation, pairwise_separation, Axiom, PairReading, Separation};
use crate::pairwise::{
    component_bitop, induced_bitop, pairwise_soft, search_counterexamples, verify_theorems,
    SoftBitopSpace, Status,
};
use crate::sampling::{random_space, seeded_rng, DEFAULT_SEED};
use crate::soft_core::SoftElements;
use crate::symbolic::{cf_is_cover, decide_finite_subcover, CofiniteSoftSet, TemplateFamily};
use crate::verdict::Witness;

pub use description::SpaceDescription;
pub use report::Report;
use report::{ExampleRow, Renderer};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_CAPACITY: u8 = 3;

const REPRESENTABILITY: &str = include_str!("../../fixtures/representability.json");
const INDUCED_HAUSDORFF: &str = include_str!("../../fixtures/induced_hausdorff.json");
const INFINITE_PARAMETERS: &str = include_str!("../../fixtures/infinite_parameters.json");
const GOLDEN_EXAMPLES: &str = include_str!("../../golden/examples.txt");

#[derive(Debug, Parser)]
#[command(
    name = "soft-bitop",
    version,
    about = "Finite soft bitopological spaces"
)]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized runs.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Append wall-clock time to the report (breaks byte-identical output).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Soft topology checks and separation verdicts for a described space.
    Check {
        /// JSON description; standard input when omitted.
        file: Option<PathBuf>,
    },
    /// Runs every structural check on a described space or on random spaces.
    Verify {
        file: Option<PathBuf>,
        /// Verify this many seeded random spaces instead of reading input.
        #[arg(long)]
        random: Option<usize>,
    },
    /// Reproduces the three built-in examples against their golden outcomes.
    Examples,
    /// Exhaustive search for small spaces of interest.
    Search {
        #[arg(long, default_value_t = 2)]
        max_universe: usize,
        #[arg(long, default_value_t = 2)]
        max_params: usize,
    },
}

/// Runs one invocation and returns the exit code. Reports go to `out`,
/// diagnostics to `err`.
pub fn run(cli: &Cli, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let start = Instant::now();
    let outcome = match &cli.command {
        Command::Check { file } => read_input(file.as_ref(), stdin).and_then(|t| cmd_check(&t)),
        Command::Verify {
            file,
            random: Some(n),
        } => {
            if file.is_some() {
                Err(Error::Input("--random takes no input file".into()))
            } else {
                cmd_verify_random(*n, cli.seed)
            }
        }
        Command::Verify { file, random: None } => {
            read_input(file.as_ref(), stdin).and_then(|t| cmd_verify(&t))
        }
        Command::Examples => cmd_examples(),
        Command::Search {
            max_universe,
            max_params,
        } => cmd_search(*max_universe, *max_params),
    };
    match outcome {
        Ok(mut report) => {
            if cli.timing {
                report.timing_ms = Some(start.elapsed().as_millis());
            }
            let text = if cli.json {
                report.to_json()
            } else {
                report.to_text()
            };
            let _ = out.write_all(text.as_bytes());
            if report.has_failure() {
                EXIT_FAILURE
            } else {
                EXIT_OK
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_capacity() {
                EXIT_CAPACITY
            } else {
                EXIT_INPUT
            }
        }
    }
}

fn read_input(file: Option<&PathBuf>, stdin: &mut dyn Read) -> Result<String> {
    let mut text = String::new();
    match file {
        Some(path) => {
            text = std::fs::read_to_string(path)
                .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
        }
        None => {
            stdin
                .read_to_string(&mut text)
                .map_err(|e| Error::Input(format!("standard input: {e}")))?;
        }
    }
    Ok(text)
}

fn axiom_name(axiom: Axiom) -> &'static str {
    match axiom {
        Axiom::T0 => "t0",
        Axiom::T1 => "t1",
        Axiom::T2 => "t2",
    }
}

fn separation_row(
    report: &mut Report,
    name: String,
    outcome: Separation,
    render: impl Fn(usize, usize) -> String,
) {
    report.row(
        name,
        outcome.holds(),
        outcome.witness().map(|(a, b)| render(a, b)),
    );
}

fn space_rows(
    report: &mut Report,
    space: &SoftBitopSpace,
    names: &[String],
    params: &[String],
) -> Result<()> {
    let se = space.soft_elements();
    let render = Renderer {
        names,
        params,
        se: Some(se),
    };
    report.row("soft-elements", se.len(), None);
    for (label, tau) in [("tau1", space.tau1()), ("tau2", space.tau2())] {
        report.row(format!("{label}-opens"), tau.len(), None);
        report.row(format!("{label}-canonical"), tau.is_canonical(), None);
    }
    for axiom in Axiom::ALL {
        let v = pairwise_soft(space, axiom);
        report.row(
            format!("soft-{}", axiom_name(axiom)),
            v.holds,
            v.witness.as_ref().map(|w| render.witness(w)),
        );
    }
    for t in 0..space.param_count() {
        let pair = component_bitop(space, t)?;
        let p = render_param(params, t);
        for axiom in Axiom::ALL {
            separation_row(
                report,
                format!("component[{p}]-{}", axiom_name(axiom)),
                pairwise_separation(&pair, axiom, PairReading::Ordered),
                |a, b| format!("{} vs {}", render_point(names, a), render_point(names, b)),
            );
        }
    }
    let induced = induced_bitop(space)?;
    for (label, fam) in [
        ("induced-tau1", &induced.first),
        ("induced-tau2", &induced.second),
    ] {
        report.row(format!("{label}-opens"), fam.len(), None);
        let defect = fam.closure_defect().map(|(a, b)| {
            render.witness(&Witness::InducedSets {
                first: a.iter().map(|i| se.get(i).clone()).collect(),
                second: b.iter().map(|i| se.get(i).clone()).collect(),
            })
        });
        report.row(format!("{label}-topology"), defect.is_none(), defect);
    }
    for axiom in Axiom::ALL {
        separation_row(
            report,
            format!("induced-{}", axiom_name(axiom)),
            family_separation(&induced, axiom, PairReading::Ordered),
            |a, b| {
                render.witness(&Witness::InducedPair {
                    first: a,
                    second: b,
                })
            },
        );
    }
    Ok(())
}

fn render_param(params: &[String], t: usize) -> String {
    params.get(t).cloned().unwrap_or_else(|| t.to_string())
}

fn render_point(names: &[String], x: usize) -> String {
    names.get(x).cloned().unwrap_or_else(|| x.to_string())
}

fn representability_rows(
    report: &mut Report,
    se: &SoftElements,
    subsets: &[Vec<crate::soft_core::SoftElement>],
    names: &[String],
) -> Result<()> {
    for (i, k) in subsets.iter().enumerate() {
        let subset = se.subset_from_elements(k.iter())?;
        let r = se.is_se_representable(&subset)?;
        report.row(
            format!("representable[{i}]"),
            r.representable,
            r.witness.map(|w| w.display_with(names).to_string()),
        );
    }
    Ok(())
}

fn symbolic_rows(
    report: &mut Report,
    family: &TemplateFamily,
    target: &CofiniteSoftSet,
    names: &[String],
) -> Result<()> {
    let render = Renderer {
        names,
        params: &[],
        se: None,
    };
    let cover = cf_is_cover(family, target)?;
    report.row(
        "symbolic-cover",
        cover.holds,
        cover.witness.as_ref().map(|w| render.witness(w)),
    );
    if cover.holds {
        let v = decide_finite_subcover(family, target)?;
        report.row(
            "symbolic-finite-subcover",
            if v.holds { "found" } else { "none" },
            v.witness.as_ref().map(|w| render.witness(w)),
        );
    }
    Ok(())
}

pub fn cmd_check(text: &str) -> Result<Report> {
    let desc = SpaceDescription::from_json(text)?;
    let r = desc.resolve()?;
    let mut report = Report::new("check");
    if let Some(space) = &r.space {
        space_rows(&mut report, space, &r.names, &r.params)?;
        representability_rows(
            &mut report,
            space.soft_elements(),
            &r.representability,
            &r.names,
        )?;
    }
    if let Some((family, target)) = &r.symbolic {
        symbolic_rows(&mut report, family, target, &r.names)?;
    }
    Ok(report)
}

pub fn cmd_verify(text: &str) -> Result<Report> {
    let desc = SpaceDescription::from_json(text)?;
    let r = desc.resolve()?;
    let mut report = Report::new("verify");
    if let Some(space) = &r.space {
        let theorems = verify_theorems(space)?;
        let render = Renderer {
            names: &r.names,
            params: &r.params,
            se: Some(space.soft_elements()),
        };
        report.add_theorems(&theorems, &render, "");
        representability_rows(
            &mut report,
            space.soft_elements(),
            &r.representability,
            &r.names,
        )?;
    }
    if let Some((family, target)) = &r.symbolic {
        symbolic_rows(&mut report, family, target, &r.names)?;
    }
    Ok(report)
}

/// Verifies `count` random spaces (at most two parameters over at most
/// three points) and tallies each check.
pub fn cmd_verify_random(count: usize, seed: u64) -> Result<Report> {
    let mut rng = seeded_rng(seed);
    let mut tally: Vec<(String, [usize; 3])> = Vec::new();
    for _ in 0..count {
        let space = random_space(&mut rng, 2, 3)?;
        for c in verify_theorems(&space)?.checks {
            let slot = match c.status {
                Status::Pass => 0,
                Status::Fail => 1,
                Status::NotApplicable => 2,
            };
            match tally.iter_mut().find(|(id, _)| *id == c.id) {
                Some((_, counts)) => counts[slot] += 1,
                None => {
                    let mut counts = [0; 3];
                    counts[slot] = 1;
                    tally.push((c.id, counts));
                }
            }
        }
    }
    let mut report = Report::new("verify");
    report.row("random-spaces", count, None);
    report.row("seed", seed, None);
    for (id, [pass, fail, na]) in tally {
        report.theorems.push(report::TheoremRow {
            name: id,
            status: if fail > 0 { Status::Fail } else { Status::Pass },
            witness: None,
            note: Some(format!("pass {pass}, fail {fail}, n/a {na}")),
        });
    }
    Ok(report)
}

fn example_line_representability() -> Result<String> {
    let r = SpaceDescription::from_json(REPRESENTABILITY)?.resolve()?;
    let space = r.space.as_ref().expect("fixture has topologies");
    let se = space.soft_elements();
    let k = se.subset_from_elements(r.representability[0].iter())?;
    let rep = se.is_se_representable(&k)?;
    Ok(match rep.witness {
        None => "representable".to_string(),
        Some(w) => format!("non-representable, witness {}", w.display_with(&r.names)),
    })
}

fn example_line_induced() -> Result<String> {
    let r = SpaceDescription::from_json(INDUCED_HAUSDORFF)?.resolve()?;
    let space = r.space.as_ref().expect("fixture has topologies");
    let t0 = pairwise_soft(space, Axiom::T0).holds;
    let induced = induced_bitop(space)?;
    let t2 = family_separation(&induced, Axiom::T2, PairReading::Ordered).holds();
    Ok(format!("soft T0={t0}, induced pairwise T2={t2}"))
}

fn example_line_infinite() -> Result<String> {
    let r = SpaceDescription::from_json(INFINITE_PARAMETERS)?.resolve()?;
    let (family, target) = r.symbolic.as_ref().expect("fixture has a symbolic block");
    let cover = cf_is_cover(family, target)?;
    if !cover.holds {
        return Ok("cover invalid".into());
    }
    let v = decide_finite_subcover(family, target)?;
    Ok(match v.witness {
        Some(Witness::UncoveredLabel { .. }) if !v.holds => {
            "cover valid, finite subcover NONE (generic s uncovered)".to_string()
        }
        Some(Witness::SymbolicSubfamily {
            template_indices,
            explicit_members,
        }) => format!("cover valid, finite subcover FOUND (template {template_indices:?}, explicit {explicit_members:?})"),
        _ => "cover valid, finite subcover NONE".to_string(),
    })
}

pub fn cmd_examples() -> Result<Report> {
    let golden: Vec<(&str, &str)> = GOLDEN_EXAMPLES
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split_once(": ").expect("golden line has a name"))
        .collect();
    let computed = [
        ("representability", example_line_representability()?),
        ("induced-hausdorff", example_line_induced()?),
        ("infinite-parameters", example_line_infinite()?),
    ];
    let mut report = Report::new("examples");
    for (name, line) in computed {
        let expected = golden
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, e)| e.to_string())
            .unwrap_or_default();
        report.examples.push(ExampleRow {
            name: name.to_string(),
            matches: expected == line,
            computed: line,
            expected,
        });
    }
    Ok(report)
}

/// How many members of each class are listed per shape.
const SEARCH_SAMPLE: usize = 3;

pub fn cmd_search(max_universe: usize, max_params: usize) -> Result<Report> {
    let census = search_counterexamples(max_universe, max_params)?;
    let mut report = Report::new("search");
    report.row("max-universe", max_universe, None);
    report.row("max-params", max_params, None);
    report.row("not-t0-induced-t2", census.not_t0_induced_t2_count(), None);
    report.row(
        "strict-enlargements",
        census.strict_enlargement_count(),
        None,
    );
    for shape in &census.shapes {
        let label = format!(
            "F=({})",
            shape
                .section_sizes
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",")
        );
        report.row(
            label.clone(),
            format!(
                "{} {} candidates, {} not-t0-induced-t2, {} strict enlargements",
                shape.candidate_count,
                if shape.raw { "raw" } else { "canonical" },
                shape.not_t0_induced_t2.len(),
                shape.strict_enlargements.len()
            ),
            None,
        );
        for (k, found) in shape
            .not_t0_induced_t2
            .iter()
            .take(SEARCH_SAMPLE)
            .enumerate()
        {
            let space = shape.space(*found)?;
            report.row(
                format!("{label} not-t0-induced-t2#{k}"),
                format!(
                    "tau1 {:?}; tau2 {:?}",
                    space.tau1().opens(),
                    space.tau2().opens()
                ),
                None,
            );
        }
        for (k, e) in shape
            .strict_enlargements
            .iter()
            .take(SEARCH_SAMPLE)
            .enumerate()
        {
            report.row(
                format!("{label} strict-enlargement#{k}"),
                format!(
                    "{:?} ({} opens, canonical enlargement {})",
                    shape.candidates[e.candidate].opens(),
                    e.opens,
                    e.canonical_opens
                ),
                None,
            );
        }
    }
    Ok(report)
}
