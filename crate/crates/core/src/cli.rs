//! Command dispatch and JSON reports for the `pbc` binary.
//!
//! Every report is a JSON object with `command` and `summary` fields followed
//! by command-specific data. Field order is fixed by the report structs and
//! all lists come out of the engine in a deterministic order, so a report is
//! a pure function of the configuration and the command line.

use serde::Serialize;

use crate::config::{Config, Loaded, LoadedSheaf, OutputFormat};
use crate::error::{Error, Result};
use crate::exceptional_cat::{
    chain_count, hom_length, injective_class, jet_degree, maximal_chains, projective_class,
    subsheaf_lattice, ExceptionalClass, MAX_CHAIN_BLOWUPS,
};
use crate::kclass::{minimal_lift_class, pullback_class, shriek_class, twist_class, SheafClass};
use crate::ops::{parse_chain, Op};
use crate::picard_lattice::{BlowupNode, DivisorClass};
use crate::poisson_surface::{BasePoint, BirationalReport, SurfaceModel};
use crate::pseudo_twist::{
    pseudo_twist_down, pseudo_twist_up, resolve_disjoint, JetProfile, TwistDirection,
};
use crate::rigidity::{
    index_of_rigidity, is_rigid_candidate, leaf_tangent_dim, RestrictionData, RigidityReport,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Lattice,
    Transform,
    Resolve,
    Rigidity,
    Exceptional,
    Classify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Lattice => "lattice",
            Command::Transform => "transform",
            Command::Resolve => "resolve",
            Command::Rigidity => "rigidity",
            Command::Exceptional => "exceptional",
            Command::Classify => "classify",
        }
    }
}

/// One `pbc` invocation with the configuration already read into memory.
#[derive(Clone, Debug)]
pub struct Invocation {
    pub command: Command,
    pub config: String,
    pub sheaf: Option<String>,
    pub ops: Option<String>,
    pub bound: Option<i64>,
}

/// Rendered output and the process exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub exit_code: i32,
    /// Diagnostic for stderr when the command failed.
    pub error: Option<String>,
}

#[derive(Serialize)]
struct Report<'a, T: Serialize> {
    command: &'a str,
    summary: String,
    #[serde(flatten)]
    body: T,
}

#[derive(Serialize)]
struct ErrorReport<'a> {
    command: &'a str,
    summary: String,
    error: ErrorView,
}

#[derive(Serialize)]
struct ErrorView {
    kind: String,
    message: String,
    exit_code: i32,
}

struct Rendered {
    summary: String,
    json: String,
}

fn render<T: Serialize>(command: Command, summary: String, body: T) -> Rendered {
    let report = Report {
        command: command.name(),
        summary: summary.clone(),
        body,
    };
    Rendered {
        summary,
        json: serde_json::to_string_pretty(&report).expect("report serializes"),
    }
}

/// Runs a command. Errors become an error report with the matching exit code.
pub fn execute(inv: &Invocation) -> Outcome {
    let mut format = OutputFormat::Json;
    let result = Config::load(&inv.config).and_then(|loaded| {
        format = loaded.config.options.format;
        dispatch(inv, &loaded)
    });
    match result {
        Ok(r) => Outcome {
            output: emit(format, &r.summary, &r.json),
            exit_code: 0,
            error: None,
        },
        Err(e) => {
            let message = e.to_string();
            let summary = format!("error: {message}");
            let report = ErrorReport {
                command: inv.command.name(),
                summary: summary.clone(),
                error: ErrorView {
                    kind: error_kind(&e),
                    message: message.clone(),
                    exit_code: e.exit_code(),
                },
            };
            let json = serde_json::to_string_pretty(&report).expect("report serializes");
            Outcome {
                output: emit(format, &summary, &json),
                exit_code: e.exit_code(),
                error: Some(message),
            }
        }
    }
}

fn emit(format: OutputFormat, summary: &str, json: &str) -> String {
    match format {
        OutputFormat::Json => format!("{json}\n"),
        OutputFormat::Summary => format!("{summary}\n"),
    }
}

/// Variant name of an error, e.g. `NegativeLength`.
pub fn error_kind(e: &Error) -> String {
    format!("{e:?}")
        .chars()
        .take_while(|c| c.is_alphanumeric())
        .collect()
}

fn dispatch(inv: &Invocation, loaded: &Loaded) -> Result<Rendered> {
    if let Some(b) = inv.bound.filter(|&b| b < 1) {
        return Err(Error::InvalidBound(b));
    }
    match inv.command {
        Command::Lattice => cmd_lattice(loaded, inv.bound),
        Command::Transform => {
            let ops = inv
                .ops
                .as_deref()
                .ok_or_else(|| Error::Config("transform needs --ops".into()))?;
            cmd_transform(loaded, sheaf(inv, loaded)?, &parse_chain(ops)?)
        }
        Command::Resolve => cmd_resolve(sheaf(inv, loaded)?),
        Command::Rigidity => cmd_rigidity(
            sheaf(inv, loaded)?,
            inv.bound.unwrap_or(loaded.config.options.coeff_bound),
        ),
        Command::Exceptional => cmd_exceptional(&loaded.surface),
        Command::Classify => cmd_classify(&loaded.surface),
    }
}

fn sheaf<'a>(inv: &Invocation, loaded: &'a Loaded) -> Result<&'a LoadedSheaf> {
    let name = inv
        .sheaf
        .as_deref()
        .ok_or_else(|| Error::Config(format!("{} needs --sheaf", inv.command.name())))?;
    loaded
        .sheaves
        .get(name)
        .ok_or_else(|| Error::Config(format!("--sheaf: no sheaf named `{name}` in the config")))
}

#[derive(Serialize)]
struct ClassView {
    rank: u32,
    c1: String,
    chi: i64,
    stage: usize,
}

impl From<&SheafClass> for ClassView {
    fn from(c: &SheafClass) -> Self {
        ClassView {
            rank: c.rank,
            c1: c.c1.to_string(),
            chi: c.chi,
            stage: c.stage(),
        }
    }
}

#[derive(Serialize)]
struct NodeView {
    blowup: String,
    parent: String,
    on_anticanonical: bool,
    multiplicity: u32,
}

fn node_view(index: usize, node: &BlowupNode) -> NodeView {
    NodeView {
        blowup: format!("e{}", index + 1),
        parent: node.parent.to_string(),
        on_anticanonical: node.on_anticanonical,
        multiplicity: node.anticanonical_multiplicity,
    }
}

#[derive(Serialize)]
struct SurfaceView<'a> {
    base_case: &'static str,
    genus: u32,
    subcase: Option<String>,
    base_points: &'a [BasePoint],
    blowups: Vec<NodeView>,
}

fn surface_view(x: &SurfaceModel) -> SurfaceView<'_> {
    SurfaceView {
        base_case: x.base_case().name(),
        genus: x.genus(),
        subcase: x.subcase().map(|k| format!("{k:?}")),
        base_points: x.base_points(),
        blowups: x
            .forest()
            .nodes()
            .iter()
            .enumerate()
            .map(|(i, n)| node_view(i, n))
            .collect(),
    }
}

fn strings(classes: &[DivisorClass]) -> Vec<String> {
    classes.iter().map(ToString::to_string).collect()
}

#[derive(Serialize)]
struct ComponentView {
    name: String,
    f: String,
    f_dual: String,
    e_f: String,
    self_intersection: i64,
}

#[derive(Serialize)]
struct MinusTwoView {
    bound: i64,
    classes: Vec<String>,
}

#[derive(Serialize)]
struct LatticeBody<'a> {
    surface: SurfaceView<'a>,
    basis: Vec<String>,
    intersection_matrix: Vec<Vec<i64>>,
    canonical_class: String,
    anticanonical_class: String,
    e_pi: String,
    components: Vec<ComponentView>,
    minus_one_divisors: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    minus_two_classes: Option<MinusTwoView>,
}

fn cmd_lattice(loaded: &Loaded, bound: Option<i64>) -> Result<Rendered> {
    let x = &loaded.surface;
    let n = x.n();
    let components = x
        .exceptional_components()?
        .into_iter()
        .map(|c| {
            Ok(ComponentView {
                name: format!("f{}", c.index + 1),
                self_intersection: x.self_intersection(&c.class_f)?,
                f: c.class_f.to_string(),
                f_dual: c.class_f_dual.to_string(),
                e_f: c.class_e_f.to_string(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let minus_one = strings(&x.enumerate_minus_one_divisors()?);
    let minus_two_bound = bound.or(loaded
        .config
        .options
        .minus_two_classes
        .then_some(loaded.config.options.coeff_bound));
    let minus_two = minus_two_bound
        .map(|b| {
            x.enumerate_minus_two_classes(b).map(|c| MinusTwoView {
                bound: b,
                classes: strings(&c),
            })
        })
        .transpose()?;
    let mut summary = format!(
        "{} with {n} blowups: rank {} lattice, K = {}, {} (-1)-divisors",
        x.base_case().name(),
        n + 2,
        x.canonical_class(),
        minus_one.len()
    );
    if let Some(m) = &minus_two {
        summary.push_str(&format!(
            ", {} (-2)-classes within bound {}",
            m.classes.len(),
            m.bound
        ));
    }
    let basis = ["s".to_string(), "f".to_string()]
        .into_iter()
        .chain((1..=n).map(|i| format!("e{i}")))
        .collect();
    let body = LatticeBody {
        surface: surface_view(x),
        basis,
        intersection_matrix: x.intersection_matrix(),
        canonical_class: x.canonical_class().to_string(),
        anticanonical_class: x.anticanonical_class().to_string(),
        e_pi: x.e_pi().to_string(),
        components,
        minus_one_divisors: minus_one,
        minus_two_classes: minus_two,
    };
    Ok(render(Command::Lattice, summary, body))
}

#[derive(Serialize)]
struct TransformStep {
    op: String,
    class: ClassView,
    #[serde(skip_serializing_if = "Option::is_none")]
    r_value: Option<i64>,
}

#[derive(Serialize)]
struct TransformBody {
    sheaf: String,
    initial: ClassView,
    steps: Vec<TransformStep>,
    #[serde(rename = "final")]
    final_class: ClassView,
}

fn cmd_transform(loaded: &Loaded, s: &LoadedSheaf, ops: &[Op]) -> Result<Rendered> {
    let x = &loaded.surface;
    let mut class = s.class.clone();
    // class before the most recent minimal lift, if that was the last op
    let mut unlifted: Option<SheafClass> = None;
    let mut steps = Vec::with_capacity(ops.len());
    for op in ops {
        let mut r_value = None;
        let next = match op {
            Op::Pullback => pullback_class(&class, x)?,
            Op::Shriek => shriek_class(&class, x)?,
            Op::MinimalLift => {
                let datum = s.lift.as_ref().ok_or_else(|| {
                    Error::Config(format!(
                        "minimal-lift: sheaf `{}` has no lift datum",
                        s.name
                    ))
                })?;
                if class.stage() != s.class.stage() {
                    return Err(Error::Config(format!(
                        "minimal-lift: lift datum is given from stage {}, class is at stage {}",
                        s.class.stage(),
                        class.stage()
                    )));
                }
                minimal_lift_class(&class, datum, x)?
            }
            Op::Twist(expr) => {
                let d = DivisorClass::parse(expr, class.stage())?;
                twist_class(&class, &d, &x.truncated(class.stage())?)?
            }
            Op::PseudoTwistUp(k) | Op::PseudoTwistDown(k) => {
                let m = unlifted.as_ref().ok_or_else(|| {
                    Error::Config(format!("{op}: needs a preceding minimal-lift"))
                })?;
                let f = x.exceptional_component(*k)?;
                let (twisted, r) = if matches!(op, Op::PseudoTwistUp(_)) {
                    pseudo_twist_up(m, &class, &f, x)?
                } else {
                    pseudo_twist_down(m, &class, &f, x)?
                };
                r_value = Some(r);
                twisted
            }
        };
        unlifted = matches!(op, Op::MinimalLift).then(|| class.clone());
        steps.push(TransformStep {
            op: op.to_string(),
            class: ClassView::from(&next),
            r_value,
        });
        class = next;
    }
    let summary = format!(
        "sheaf {}: {} ops, ({}, {}, {}) -> ({}, {}, {})",
        s.name,
        ops.len(),
        s.class.rank,
        s.class.c1,
        s.class.chi,
        class.rank,
        class.c1,
        class.chi
    );
    let body = TransformBody {
        sheaf: s.name.clone(),
        initial: ClassView::from(&s.class),
        steps,
        final_class: ClassView::from(&class),
    };
    Ok(render(Command::Transform, summary, body))
}

#[derive(Serialize)]
struct ResolveStepView {
    step: usize,
    site: String,
    new_blowup: NodeView,
    direction: TwistDirection,
    r_value: i64,
    twisted: ClassView,
    lift: ClassView,
    jets: JetProfile,
    index_of_rigidity: i64,
}

#[derive(Serialize)]
struct ResolveBody<'a> {
    sheaf: String,
    initial: ClassView,
    initial_jets: JetProfile,
    initial_index_of_rigidity: i64,
    steps: Vec<ResolveStepView>,
    final_class: ClassView,
    final_surface: SurfaceView<'a>,
    final_anticanonical_degree: i64,
    disjoint: bool,
}

fn cmd_resolve(s: &LoadedSheaf) -> Result<Rendered> {
    let jets = s.jets.clone().unwrap_or_default();
    let trace = resolve_disjoint(&s.class, &jets, &s.home)?;
    let degree = trace.final_anticanonical_degree();
    let steps = trace
        .steps
        .iter()
        .enumerate()
        .map(|(i, st)| ResolveStepView {
            step: i + 1,
            site: st.site.to_string(),
            new_blowup: node_view(st.node_index, &st.node),
            direction: st.direction,
            r_value: st.r_value,
            twisted: ClassView::from(&st.twisted),
            lift: ClassView::from(&st.lift),
            jets: st.jets.clone(),
            index_of_rigidity: st.index_of_rigidity,
        })
        .collect::<Vec<_>>();
    let summary = format!(
        "sheaf {}: disjoint after {} blowups, final c1 = {}, chi_alpha = {}",
        s.name,
        steps.len(),
        trace.final_class.c1,
        trace.initial_index_of_rigidity
    );
    let body = ResolveBody {
        sheaf: s.name.clone(),
        initial: ClassView::from(&trace.initial_class),
        initial_jets: trace.initial_jets.clone(),
        initial_index_of_rigidity: trace.initial_index_of_rigidity,
        steps,
        final_class: ClassView::from(&trace.final_class),
        final_surface: surface_view(&trace.final_surface),
        final_anticanonical_degree: degree,
        disjoint: degree == 0,
    };
    Ok(render(Command::Resolve, summary, body))
}

#[derive(Serialize)]
struct RigidityBody {
    sheaf: String,
    class: ClassView,
    restriction: &'static str,
    chi_alpha: i64,
    dim_end: u32,
    leaf_tangent_dim: u32,
    candidate: Option<RigidityReport>,
}

fn cmd_rigidity(s: &LoadedSheaf, bound: i64) -> Result<Rendered> {
    let x = &s.home;
    let chi_alpha = index_of_rigidity(&s.class, &s.restriction, x)?;
    let leaf = leaf_tangent_dim(&s.class, &s.restriction, s.dim_end, x)?;
    let candidate = (s.class.rank == 0 && s.restriction == RestrictionData::Disjoint)
        .then(|| is_rigid_candidate(&s.class, &s.restriction, x, bound))
        .transpose()?;
    let mut summary = format!(
        "sheaf {}: chi_alpha = {chi_alpha}, leaf tangent dimension {leaf}",
        s.name
    );
    if let Some(c) = &candidate {
        summary.push_str(if c.numeric_rigid {
            ", numerically rigid"
        } else {
            ", not rigid"
        });
    }
    let body = RigidityBody {
        sheaf: s.name.clone(),
        class: ClassView::from(&s.class),
        restriction: s.restriction.kind(),
        chi_alpha,
        dim_end: s.dim_end,
        leaf_tangent_dim: leaf,
        candidate,
    };
    Ok(render(Command::Rigidity, summary, body))
}

#[derive(Serialize)]
struct ExceptionalView {
    c1: String,
    multiplicities: Vec<u64>,
}

impl From<ExceptionalClass> for ExceptionalView {
    fn from(c: ExceptionalClass) -> Self {
        ExceptionalView {
            c1: c.c1.to_string(),
            multiplicities: c.multiplicities,
        }
    }
}

#[derive(Serialize)]
struct ProjectiveView {
    component: String,
    projective: ExceptionalView,
    injective: ExceptionalView,
    jet_degree: u64,
}

#[derive(Serialize)]
struct LatticeEntryView {
    members: Vec<String>,
    divisor: String,
}

#[derive(Serialize)]
struct ChainView {
    ordering: Vec<String>,
    subquotients: Vec<String>,
}

#[derive(Serialize)]
struct ExceptionalBody {
    n: usize,
    components: Vec<ProjectiveView>,
    lattice_size: usize,
    lattice: Vec<LatticeEntryView>,
    chain_count: u64,
    /// Present only for `n <= MAX_CHAIN_BLOWUPS`.
    chains: Option<Vec<ChainView>>,
    /// `hom_table[f][g] = length Hom(P_f, O_g(-1))`.
    hom_table: Vec<Vec<u64>>,
}

fn fname(i: usize) -> String {
    format!("f{}", i + 1)
}

fn cmd_exceptional(x: &SurfaceModel) -> Result<Rendered> {
    let n = x.n();
    let lattice = subsheaf_lattice(x)?;
    let components = (0..n)
        .map(|f| {
            Ok(ProjectiveView {
                component: fname(f),
                projective: projective_class(f, x)?.into(),
                injective: injective_class(f, x)?.into(),
                jet_degree: jet_degree(f, x)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let hom_table = (0..n)
        .map(|f| {
            (0..n)
                .map(|g| hom_length(f, g, x))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let chains = (n <= MAX_CHAIN_BLOWUPS)
        .then(|| maximal_chains(x))
        .transpose()?
        .map(|all| {
            all.into_iter()
                .map(|c| ChainView {
                    ordering: c.ordering.iter().map(|&i| fname(i)).collect(),
                    subquotients: c
                        .steps
                        .iter()
                        .map(|s| s.subquotient.c1.to_string())
                        .collect(),
                })
                .collect()
        });
    let count = chain_count(n)?;
    let summary = format!(
        "{n} exceptional components: {} subsheaves, {count} maximal chains",
        lattice.len()
    );
    let body = ExceptionalBody {
        n,
        components,
        lattice_size: lattice.len(),
        lattice: lattice
            .into_iter()
            .map(|e| LatticeEntryView {
                members: e.members.iter().map(|&i| fname(i)).collect(),
                divisor: e.divisor.to_string(),
            })
            .collect(),
        chain_count: count,
        chains,
        hom_table,
    };
    Ok(render(Command::Exceptional, summary, body))
}

#[derive(Serialize)]
struct ClassifyBody<'a> {
    surface: SurfaceView<'a>,
    classification: BirationalReport,
    anticanonical_class: String,
    anticanonical_multiplicities: Vec<u32>,
    h1_anticanonical: Option<u32>,
    chi_structure_sheaf: i64,
}

fn cmd_classify(x: &SurfaceModel) -> Result<Rendered> {
    let classification = x.classify_birational_type();
    let state = x.anticanonical_state();
    let summary = classification.class_label.clone();
    let body = ClassifyBody {
        surface: surface_view(x),
        classification,
        anticanonical_class: state.divisor_class.to_string(),
        anticanonical_multiplicities: state.multiplicities,
        h1_anticanonical: x.h1_anticanonical().ok(),
        chi_structure_sheaf: x.chi_structure_sheaf(),
    };
    Ok(render(Command::Classify, summary, body))
}
