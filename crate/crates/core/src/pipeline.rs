//! End-to-end orchestration: translation, time abstraction, partitioning,
//! realizability and localization, with text and JSON reports.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;

use crate::corpus::{AntonymDictionary, Requirement, RunConfig};
use crate::english::{Lexicon, SyntaxTree};
use crate::localize::{
    assemble_spec, locate_core_assuming, render_core, suggest_fixes, Core, GrowthOrder,
    LocalizeError, Suggestion,
};
use crate::ltl::{write_ltl_file, Formula, LtlEntry, LtlRole};
use crate::partition::{
    apply_overrides, partition_units, render_partition, write_part_file, PartFile, Partition,
};
use crate::semantic::AntonymTable;
use crate::synthesis::{check_realizability, Signature, SynthesisOptions, Verdict};
use crate::time::{abstract_units, render_profile, AbstractionResult, TimeProfile};
use crate::translate::{translate_corpus, TranslateOptions, TranslationUnit};

/// Bumped whenever the JSON layout changes incompatibly.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    Translate,
    Abstract,
    Partition,
    Check,
    Core,
}

impl std::fmt::Display for Stage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Stage::Translate => "translate",
            Stage::Abstract => "abstract",
            Stage::Partition => "partition",
            Stage::Check => "check",
            Stage::Core => "core",
        })
    }
}

pub enum Source {
    English {
        requirements: Vec<Requirement>,
        dictionary: AntonymDictionary,
        lexicon: Lexicon,
    },
    /// Pre-written formulas, with an optional fixed partition.
    Ltl {
        entries: Vec<LtlEntry>,
        part: Option<PartFile>,
    },
}

#[derive(Clone, Debug)]
pub struct PipelineOptions {
    pub config: RunConfig,
    /// Run time abstraction. Formula sources skip it regardless.
    pub abstract_time: bool,
    pub overrides: Option<PartFile>,
    pub stop_after: Stage,
    pub order: GrowthOrder,
    pub automaton_budget: usize,
    pub game_budget: usize,
    /// Record wall-clock time per stage. Off by default so that JSON
    /// reports are reproducible byte for byte.
    pub timings: bool,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        let s = SynthesisOptions::default();
        PipelineOptions {
            config: RunConfig::default(),
            abstract_time: true,
            overrides: None,
            stop_after: Stage::Check,
            order: GrowthOrder::Corpus,
            automaton_budget: s.automaton_budget,
            game_budget: s.game_budget,
            timings: false,
        }
    }
}

impl PipelineOptions {
    pub fn synthesis(&self) -> SynthesisOptions {
        SynthesisOptions {
            k_max: self.config.k_max,
            automaton_budget: self.automaton_budget,
            game_budget: self.game_budget,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FormulaRecord {
    pub id: String,
    pub role: LtlRole,
    pub translated: Formula,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub abstracted: Option<Formula>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TimeRecord {
    pub profile: TimeProfile,
    pub unit_time: u32,
    pub tick_seconds: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerdictRecord {
    pub verdict: &'static str,
    pub k: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strategy: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counter_strategy: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub machine_states: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoreRecord {
    #[serde(flatten)]
    pub core: Core,
    pub suggestions: Vec<Suggestion>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StageFailure {
    pub stage: Stage,
    pub message: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct StageTiming {
    pub stage: Stage,
    pub millis: u128,
}

/// Artifacts of every completed stage, in pipeline order.
#[derive(Clone, Debug, Serialize)]
pub struct PipelineReport {
    pub schema_version: u32,
    pub completed: Vec<Stage>,
    pub requirements: Vec<Requirement>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub syntax_trees: Option<Vec<(String, SyntaxTree)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub antonyms: Option<AntonymTable>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub formulas: Option<Vec<FormulaRecord>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub time_abstraction: Option<TimeRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partition: Option<Partition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<VerdictRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub core: Option<CoreRecord>,
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<StageFailure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Vec<StageTiming>>,
}

/// Result of one pipeline run: the report plus the in-memory artifacts
/// needed to write files.
pub struct PipelineRun {
    pub report: PipelineReport,
    /// Guarantees after the last completed transformation.
    pub units: Vec<TranslationUnit>,
    pub assumptions: Vec<(String, Formula)>,
    pub partition: Option<Partition>,
    pub verdict: Option<Verdict>,
}

impl PipelineRun {
    /// 0 realizable, 1 unrealizable, 2 unknown, 3 failed stage. Runs that
    /// stop before checking exit 0.
    pub fn exit_code(&self) -> i32 {
        if self.report.error.is_some() {
            return 3;
        }
        self.verdict.as_ref().map_or(0, Verdict::exit_code)
    }

    /// Formulas in `.ltl` format, labelled with requirement ids.
    pub fn ltl_text(&self) -> String {
        let mut entries: Vec<LtlEntry> = self
            .assumptions
            .iter()
            .map(|(id, f)| LtlEntry {
                label: Some(id.clone()),
                role: LtlRole::Assume,
                formula: f.clone(),
            })
            .collect();
        entries.extend(self.units.iter().map(|u| LtlEntry {
            label: Some(u.id.clone()),
            role: LtlRole::Guarantee,
            formula: u.formula.clone(),
        }));
        write_ltl_file(&entries)
    }

    pub fn part_text(&self) -> Option<String> {
        self.partition
            .as_ref()
            .map(|p| write_part_file(&p.inputs, &p.outputs))
    }

    pub fn json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.report).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn text(&self) -> String {
        render_text(&self.report, &self.units)
    }

    /// Strategy or counter-strategy as a transition table.
    pub fn machine_text(&self) -> Option<String> {
        match self.verdict.as_ref()? {
            Verdict::Realizable { machine, .. } => Some(machine.to_text()),
            Verdict::Unrealizable { counter, .. } => Some(counter.to_text()),
            Verdict::Unknown { .. } => None,
        }
    }

    pub fn machine_dot(&self) -> Option<String> {
        match self.verdict.as_ref()? {
            Verdict::Realizable { machine, .. } => Some(machine.to_dot()),
            Verdict::Unrealizable { counter, .. } => Some(counter.to_dot()),
            Verdict::Unknown { .. } => None,
        }
    }

    pub fn core_text(&self) -> Option<String> {
        let c = self.report.core.as_ref()?;
        Some(render_core(&c.core, &self.units, &self.sources(), &c.suggestions))
    }

    fn sources(&self) -> Vec<(String, String)> {
        self.report
            .requirements
            .iter()
            .map(|r| (r.id.clone(), r.text.clone()))
            .collect()
    }
}

struct Clock {
    on: bool,
    start: Instant,
    log: Vec<StageTiming>,
}

impl Clock {
    fn lap(&mut self, stage: Stage) {
        if self.on {
            self.log.push(StageTiming {
                stage,
                millis: self.start.elapsed().as_millis(),
            });
            self.start = Instant::now();
        }
    }
}

/// Runs the pipeline up to `opts.stop_after`. Stage failures are recorded
/// in the report rather than returned, so partial artifacts survive.
pub fn run_pipeline(source: &Source, opts: &PipelineOptions) -> PipelineRun {
    let mut run = PipelineRun {
        report: PipelineReport {
            schema_version: SCHEMA_VERSION,
            completed: vec![],
            requirements: vec![],
            syntax_trees: None,
            antonyms: None,
            formulas: None,
            time_abstraction: None,
            partition: None,
            verdict: None,
            core: None,
            warnings: vec![],
            error: None,
            timings: None,
        },
        units: vec![],
        assumptions: vec![],
        partition: None,
        verdict: None,
    };
    let mut clock = Clock {
        on: opts.timings,
        start: Instant::now(),
        log: vec![],
    };
    let _ = stages(source, opts, &mut run, &mut clock);
    if opts.timings {
        run.report.timings = Some(clock.log);
    }
    run
}

/// Marks a run stopped by a stage failure; the failure itself is in the report.
struct Halted;

fn fail<E: std::fmt::Display>(run: &mut PipelineRun, stage: Stage) -> impl FnOnce(E) -> Halted + '_ {
    move |e| {
        run.report.error = Some(StageFailure {
            stage,
            message: e.to_string(),
        });
        Halted
    }
}

fn stages(
    source: &Source,
    opts: &PipelineOptions,
    run: &mut PipelineRun,
    clock: &mut Clock,
) -> Result<(), Halted> {
    if let Err(e) = opts.config.validate() {
        return Err(fail(run, Stage::Translate)(e));
    }

    // Translate, or take the formulas as given.
    let mut fixed_part: Option<&PartFile> = None;
    match source {
        Source::English {
            requirements,
            dictionary,
            lexicon,
        } => {
            run.report.requirements = requirements.clone();
            let topts = TranslateOptions {
                unit_time: opts.config.unit_time,
                ..TranslateOptions::default()
            };
            let t = translate_corpus(requirements, lexicon, dictionary, &topts)
                .map_err(fail(run, Stage::Translate))?;
            run.report.syntax_trees = Some(t.trees);
            run.report.antonyms = Some(t.antonyms);
            run.units = t.units;
        }
        Source::Ltl { entries, part } => {
            fixed_part = part.as_ref();
            for (i, e) in entries.iter().enumerate() {
                let id = e.label.clone().unwrap_or_else(|| format!("F{}", i + 1));
                match e.role {
                    LtlRole::Assume => run.assumptions.push((id, e.formula.clone())),
                    LtlRole::Guarantee => run.units.push(TranslationUnit::new(id, e.formula.clone())),
                }
            }
            let mut seen = std::collections::BTreeSet::new();
            for id in run.assumptions.iter().map(|a| &a.0).chain(run.units.iter().map(|u| &u.id)) {
                if !seen.insert(id.clone()) {
                    let msg = format!("duplicate formula label {id}");
                    return Err(fail(run, Stage::Translate)(msg));
                }
            }
        }
    }
    run.report.formulas = Some(
        run.assumptions
            .iter()
            .map(|(id, f)| (id, LtlRole::Assume, f))
            .chain(run.units.iter().map(|u| (&u.id, LtlRole::Guarantee, &u.formula)))
            .map(|(id, role, f)| FormulaRecord {
                id: id.clone(),
                role,
                translated: f.clone(),
                abstracted: None,
            })
            .collect(),
    );
    run.report.completed.push(Stage::Translate);
    clock.lap(Stage::Translate);

    let english = matches!(source, Source::English { .. });
    if english && opts.abstract_time {
        let cfg = &opts.config;
        let res: AbstractionResult = abstract_units(
            &run.units,
            cfg.delta_bound,
            &cfg.sign_policy,
            cfg.gcd_only,
            cfg.unit_time,
        )
        .map_err(fail(run, Stage::Abstract))?;
        if res.profile.error_sum() > 0 {
            run.report.warnings.push(format!(
                "time abstraction shifts deadlines by {} abstract ticks in total",
                res.profile.error_sum()
            ));
        }
        if let Some(rows) = run.report.formulas.as_mut() {
            for (row, u) in rows.iter_mut().zip(&res.units) {
                row.abstracted = Some(u.formula.clone());
            }
        }
        run.report.time_abstraction = Some(TimeRecord {
            profile: res.profile.clone(),
            unit_time: res.unit_time,
            tick_seconds: res.tick_seconds(),
        });
        run.units = res.units;
        run.report.completed.push(Stage::Abstract);
        clock.lap(Stage::Abstract);
    }
    if opts.stop_after <= Stage::Abstract {
        return Ok(());
    }

    // Partition over guarantees and assumptions alike.
    let mut all_units = run.units.clone();
    all_units.extend(
        run.assumptions
            .iter()
            .map(|(id, f)| TranslationUnit::new(id.clone(), f.clone())),
    );
    let mut partition = match fixed_part {
        Some(pf) => {
            let atoms = all_units.iter().flat_map(|u| u.propositions.iter().cloned()).collect();
            Partition::from_file(pf, &atoms).map_err(fail(run, Stage::Partition))?
        }
        None => partition_units(&all_units),
    };
    if let Some(ov) = &opts.overrides {
        partition = apply_overrides(&partition, ov).map_err(fail(run, Stage::Partition))?;
    }
    if let Some(v) = partition.promoted() {
        run.report.warnings.push(format!(
            "no input variable found; promoted {v} to input (override if wrong)"
        ));
    }
    run.report.partition = Some(partition.clone());
    run.partition = Some(partition.clone());
    run.report.completed.push(Stage::Partition);
    clock.lap(Stage::Partition);
    if opts.stop_after <= Stage::Partition {
        return Ok(());
    }

    let sig = Signature::from(&partition);
    let synth = opts.synthesis();
    let guarantees: Vec<Formula> = run.units.iter().map(|u| u.formula.clone()).collect();
    let assumptions: Vec<Formula> = run.assumptions.iter().map(|a| a.1.clone()).collect();
    let spec = assemble_spec(&guarantees, &assumptions);
    let verdict = check_realizability(&spec, &sig, &synth).map_err(fail(run, Stage::Check))?;
    run.report.verdict = Some(verdict_record(&verdict));
    run.report.completed.push(Stage::Check);
    clock.lap(Stage::Check);

    let localize = match &verdict {
        Verdict::Unrealizable { .. } => true,
        Verdict::Unknown { .. } => opts.stop_after >= Stage::Core,
        Verdict::Realizable { .. } => {
            if opts.stop_after >= Stage::Core {
                run.report
                    .warnings
                    .push("specification is realizable; there is no core to locate".into());
            }
            false
        }
    };
    run.verdict = Some(verdict);
    if !localize {
        return Ok(());
    }
    match locate_core_assuming(&run.units, &assumptions, &sig, &synth, opts.order) {
        Ok(core) => {
            let suggestions = suggest_fixes(&core, &run.units, &partition);
            run.report.core = Some(CoreRecord { core, suggestions });
            run.report.completed.push(Stage::Core);
            clock.lap(Stage::Core);
        }
        Err(LocalizeError::NoCoreFound) => {
            run.report.warnings.push(LocalizeError::NoCoreFound.to_string());
        }
        Err(e) => return Err(fail(run, Stage::Core)(e)),
    }
    Ok(())
}

fn verdict_record(v: &Verdict) -> VerdictRecord {
    let mut r = VerdictRecord {
        verdict: v.name(),
        k: v.k(),
        strategy: None,
        counter_strategy: None,
        machine_states: None,
    };
    match v {
        Verdict::Realizable { machine, .. } => {
            r.strategy = Some(machine.to_text());
            r.machine_states = Some(machine.len());
        }
        Verdict::Unrealizable { counter, .. } => {
            r.counter_strategy = Some(counter.to_text());
            r.machine_states = Some(counter.len());
        }
        Verdict::Unknown { .. } => {}
    }
    r
}

fn render_text(r: &PipelineReport, units: &[TranslationUnit]) -> String {
    let mut s = String::new();
    for w in &r.warnings {
        let _ = writeln!(s, "warning: {w}");
    }
    if !r.requirements.is_empty() {
        let _ = writeln!(s, "requirements: {}", r.requirements.len());
    }
    if let Some(rows) = &r.formulas {
        let _ = writeln!(s, "\n== formulas");
        for row in rows {
            let tag = if row.role == LtlRole::Assume { " (assume)" } else { "" };
            let _ = writeln!(s, "{}{tag}: {}", row.id, row.translated);
        }
    }
    if let Some(t) = &r.time_abstraction {
        let _ = writeln!(s, "\n== time abstraction");
        s.push_str(&render_profile(&AbstractionResult {
            profile: t.profile.clone(),
            unit_time: t.unit_time,
            units: vec![],
        }));
        if let Some(rows) = &r.formulas {
            for row in rows {
                if let Some(a) = row.abstracted.as_ref().filter(|a| **a != row.translated) {
                    let _ = writeln!(s, "{}: {a}", row.id);
                }
            }
        }
    }
    if let Some(p) = &r.partition {
        let _ = writeln!(s, "\n== partition");
        s.push_str(&render_partition(p));
    }
    if let Some(t) = &r.timings {
        let _ = writeln!(s, "\n== timings");
        for x in t {
            let _ = writeln!(s, "{}: {} ms", x.stage, x.millis);
        }
    }
    if let Some(e) = &r.error {
        let _ = writeln!(s, "\nerror in {} stage: {}", e.stage, e.message);
    }
    if let Some(c) = &r.core {
        let _ = writeln!(s, "\n== core");
        let sources: Vec<(String, String)> = r
            .requirements
            .iter()
            .map(|q| (q.id.clone(), q.text.clone()))
            .collect();
        s.push_str(&render_core(&c.core, units, &sources, &c.suggestions));
    }
    if let Some(v) = &r.verdict {
        let _ = writeln!(s, "\n== verdict");
        let what = match (v.verdict, v.machine_states) {
            ("realizable", Some(n)) => format!(" (strategy with {n} states)"),
            ("unrealizable", Some(n)) => format!(" (counter-strategy with {n} states)"),
            _ => String::new(),
        };
        let at = if v.verdict == "unknown" { "up to" } else { "at" };
        let _ = writeln!(s, "{} {at} k={}{what}", v.verdict.to_uppercase(), v.k);
    }
    s
}

/// Writes `contents` next to `path` under a temporary name, then renames.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path
        .file_name()
        .ok_or_else(|| std::io::Error::new(std::io::ErrorKind::InvalidInput, "no file name"))?;
    let tmp = dir.join(format!(".{}.tmp{}", name.to_string_lossy(), std::process::id()));
    let res = (|| {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
        std::fs::rename(&tmp, path)
    })();
    if res.is_err() {
        let _ = std::fs::remove_file(&tmp);
    }
    res
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

/// Writes the artifacts of `run` into `dir` as `<stem>.<kind>`; returns
/// the paths written. `translate` runs produce the `.ltl` file only.
pub fn write_artifacts(
    run: &PipelineRun,
    dir: &Path,
    stem: &str,
    stop_after: Stage,
    format: ReportFormat,
) -> std::io::Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut files: Vec<(String, String)> = Vec::new();
    if run.report.completed.contains(&Stage::Translate) {
        files.push(("ltl".into(), run.ltl_text()));
    }
    if stop_after >= Stage::Abstract {
        if let Some(t) = &run.report.time_abstraction {
            let text = render_profile(&AbstractionResult {
                profile: t.profile.clone(),
                unit_time: t.unit_time,
                units: vec![],
            });
            files.push(("time.txt".into(), text));
        }
    }
    if stop_after >= Stage::Partition {
        if let Some(p) = run.part_text() {
            files.push(("part".into(), p));
        }
    }
    if stop_after >= Stage::Check {
        match format {
            ReportFormat::Text => files.push(("report.txt".into(), run.text())),
            ReportFormat::Json => files.push(("report.json".into(), run.json())),
        }
        let kind = match run.verdict {
            Some(Verdict::Unrealizable { .. }) => "counter",
            _ => "strategy",
        };
        if let (Some(t), Some(d)) = (run.machine_text(), run.machine_dot()) {
            files.push((format!("{kind}.txt"), t));
            files.push((format!("{kind}.dot"), d));
        }
        if let Some(c) = run.core_text() {
            files.push(("core.txt".into(), c));
        }
    }
    let mut out = Vec::new();
    for (ext, text) in files {
        let path = dir.join(format!("{stem}.{ext}"));
        write_atomic(&path, &text)?;
        out.push(path);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::parse_requirements;
    use crate::ltl::parse_ltl_file;
    use crate::partition::parse_part_file;

    fn english(src: &str) -> Source {
        Source::English {
            requirements: parse_requirements(src).unwrap(),
            dictionary: AntonymDictionary::default(),
            lexicon: Lexicon::default(),
        }
    }

    fn ltl(src: &str) -> Source {
        Source::Ltl {
            entries: parse_ltl_file(src).unwrap(),
            part: None,
        }
    }

    #[test]
    fn stops_after_requested_stage() {
        let src = english("R1: When the request is received, the grant will be issued.\n");
        let run = run_pipeline(
            &src,
            &PipelineOptions {
                stop_after: Stage::Translate,
                ..Default::default()
            },
        );
        assert_eq!(run.report.completed, vec![Stage::Translate, Stage::Abstract]);
        assert!(run.report.partition.is_none());
        assert_eq!(run.exit_code(), 0);
        assert!(run.ltl_text().starts_with("# R1\n"));
    }

    #[test]
    fn ltl_source_checks_with_assumptions() {
        let with_part = |src: &str| Source::Ltl {
            entries: parse_ltl_file(src).unwrap(),
            part: Some(parse_part_file("inputs: i\noutputs: g\n").unwrap()),
        };
        // Without the assumption the environment may keep i low forever.
        let run = run_pipeline(&with_part("G (g <-> i) && G F g\n"), &PipelineOptions::default());
        assert_eq!(run.exit_code(), 1);
        let src = "# A1\nassume: G F i\n# G1\nG (g <-> i) && G F g\n";
        let run = run_pipeline(&with_part(src), &PipelineOptions::default());
        assert_eq!(run.exit_code(), 0);
        assert!(run.ltl_text().contains("# A1\nassume: "));
    }

    #[test]
    fn lone_variable_is_promoted_with_a_warning() {
        let run = run_pipeline(&ltl("G F g\n"), &PipelineOptions::default());
        assert_eq!(run.exit_code(), 1);
        assert!(run.report.warnings.iter().any(|w| w.contains("promoted g")));
    }

    #[test]
    fn unrealizable_run_carries_a_core() {
        let src = ltl("# A\nG (i -> F g)\n# B\nG !g\n");
        let run = run_pipeline(&src, &PipelineOptions::default());
        assert_eq!(run.exit_code(), 1);
        let core = &run.report.core.as_ref().unwrap().core;
        assert_eq!(core.conflict_set, vec!["A", "B"]);
        assert!(run.text().contains("UNREALIZABLE at k="));
        assert!(run.core_text().unwrap().contains("culprit: B"));
    }

    #[test]
    fn failed_stage_truncates_artifacts() {
        let src = english("R1: When the request is received, the grant will be issued.\n");
        let run = run_pipeline(
            &src,
            &PipelineOptions {
                overrides: Some(PartFile {
                    inputs: ["nosuch".to_string()].into(),
                    outputs: Default::default(),
                }),
                ..Default::default()
            },
        );
        assert_eq!(run.exit_code(), 3);
        let e = run.report.error.as_ref().unwrap();
        assert_eq!(e.stage, Stage::Partition);
        assert!(run.report.partition.is_none() && run.report.verdict.is_none());
        assert!(run.json().contains("\"error\""));
    }

    #[test]
    fn json_is_reproducible_without_timings() {
        let src = ltl("G (r -> F g)\n");
        let a = run_pipeline(&src, &PipelineOptions::default()).json();
        let b = run_pipeline(&src, &PipelineOptions::default()).json();
        assert_eq!(a, b);
        assert!(a.contains("\"schema_version\": 1"));
        assert!(!a.contains("timings"));
    }

    #[test]
    fn atomic_write_replaces_file() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("x.txt");
        write_atomic(&p, "one").unwrap();
        write_atomic(&p, "two").unwrap();
        assert_eq!(std::fs::read_to_string(&p).unwrap(), "two");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
