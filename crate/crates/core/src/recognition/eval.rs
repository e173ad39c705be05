//! Evaluation of constraints over a (partial) binding of template objects.

use std::collections::BTreeMap;

use crate::fgr::{reference_point, FgrInstance, RefMode};
use crate::geometry::{Angle, OrientedPoint, Point2};
use crate::template::{Arg, CompiledTemplate};

use super::situation::{check_schema, compatible};
use super::{
    Assignment, ComponentDegree, ConstraintResult, Pairing, RecognitionError, Situation, TemplateInstance,
};

/// Immutable inputs shared by every branch of a search.
pub(crate) struct Context<'a> {
    pub ct: &'a CompiledTemplate,
    pub situation: &'a Situation,
    /// Compatible situation objects per template object, ascending by id.
    pub compat: Vec<Vec<usize>>,
}

impl<'a> Context<'a> {
    pub fn new(ct: &'a CompiledTemplate, situation: &'a Situation) -> Result<Self, RecognitionError> {
        situation.validate()?;
        check_schema(ct, situation)?;
        let mut by_id: Vec<usize> = (0..situation.objects.len()).collect();
        by_id.sort_by(|&a, &b| situation.objects[a].id.cmp(&situation.objects[b].id));
        let compat = (0..ct.object_count())
            .map(|o| {
                by_id
                    .iter()
                    .copied()
                    .filter(|&s| compatible(ct, o, &situation.objects[s]))
                    .collect()
            })
            .collect();
        Ok(Self { ct, situation, compat })
    }
}

/// Mutable per-branch state.
#[derive(Debug, Clone)]
pub(crate) struct State {
    pub binding: Vec<Option<usize>>,
    pub used: Vec<bool>,
    /// Resolved orientation per template object: observed or hypothesized.
    orientation: Vec<Option<Angle>>,
    hypothesized: Vec<bool>,
    results: Vec<Option<FgrInstance>>,
}

impl State {
    pub fn new(ctx: &Context<'_>) -> Self {
        let m = ctx.ct.object_count();
        Self {
            binding: vec![None; m],
            used: vec![false; ctx.situation.objects.len()],
            orientation: vec![None; m],
            hypothesized: vec![false; m],
            results: vec![None; ctx.ct.constraints().len()],
        }
    }

    pub fn bind(&mut self, ctx: &Context<'_>, object: usize, situation_object: usize) {
        debug_assert!(self.binding[object].is_none() && !self.used[situation_object]);
        self.binding[object] = Some(situation_object);
        self.used[situation_object] = true;
        self.orientation[object] = ctx.situation.objects[situation_object].orientation;
    }

    pub fn unbind(&mut self, object: usize) {
        if let Some(s) = self.binding[object].take() {
            self.used[s] = false;
        }
        self.orientation[object] = None;
        self.hypothesized[object] = false;
    }

    fn location(&self, ctx: &Context<'_>, object: usize) -> Point2 {
        ctx.situation.objects[self.binding[object].expect("bound object")].location
    }

    fn reference(&self, ctx: &Context<'_>, constraint: usize, mode: RefMode) -> OrientedPoint {
        let inst = self.results[constraint].as_ref().expect("child evaluated first");
        let objects: Vec<Point2> = ctx.ct.constraints()[constraint]
            .objects
            .iter()
            .map(|&o| self.location(ctx, o))
            .collect();
        reference_point(inst, &objects, mode)
    }

    fn members(&self, ctx: &Context<'_>, constraint: usize) -> Vec<OrientedPoint> {
        ctx.ct.constraints()[constraint]
            .args
            .iter()
            .map(|a| match *a {
                Arg::Object(o) => OrientedPoint::new(self.location(ctx, o), self.orientation[o]),
                Arg::Fgr { constraint, mode } => self.reference(ctx, constraint, mode),
            })
            .collect()
    }

    /// Reference points of the constraint's nested arguments, which must
    /// already be evaluated.
    pub fn anchors(&self, ctx: &Context<'_>, constraint: usize) -> Vec<Point2> {
        ctx.ct.constraints()[constraint]
            .args
            .iter()
            .filter_map(|a| match *a {
                Arg::Fgr { constraint, mode } => Some(self.reference(ctx, constraint, mode).location),
                Arg::Object(_) => None,
            })
            .collect()
    }

    /// Grades one constraint whose objects and children are in place. Newly
    /// hypothesized orientations are fixed for the rest of the branch and
    /// the affected objects are appended to `hypothesized`.
    pub fn evaluate(&mut self, ctx: &Context<'_>, constraint: usize, hypothesized: &mut Vec<usize>) -> f64 {
        let node = &ctx.ct.constraints()[constraint];
        let inst = node.spec.evaluate(&self.members(ctx, constraint));
        for &(member, angle) in &inst.assigned_orientations {
            if let Arg::Object(o) = node.args[member] {
                if self.orientation[o].is_none() {
                    self.orientation[o] = Some(angle);
                    self.hypothesized[o] = true;
                    hypothesized.push(o);
                }
            }
        }
        let p = inst.proximity;
        self.results[constraint] = Some(inst);
        p
    }

    pub fn retract(&mut self, constraint: usize, hypothesized: &[usize]) {
        self.results[constraint] = None;
        for &o in hypothesized {
            self.orientation[o] = None;
            self.hypothesized[o] = false;
        }
    }

    /// Evaluates the whole plan on a complete binding and returns the
    /// minimum proximity.
    pub fn evaluate_all(&mut self, ctx: &Context<'_>) -> f64 {
        let mut scratch = Vec::new();
        let mut overall: f64 = 1.0;
        for &c in ctx.ct.plan() {
            overall = overall.min(self.evaluate(ctx, c, &mut scratch));
        }
        overall
    }

    /// Undoes [`evaluate_all`](Self::evaluate_all), keeping the binding.
    pub fn clear_results(&mut self, ctx: &Context<'_>) {
        for r in &mut self.results {
            *r = None;
        }
        for o in 0..self.orientation.len() {
            if self.hypothesized[o] {
                self.hypothesized[o] = false;
                self.orientation[o] = self.binding[o].and_then(|s| ctx.situation.objects[s].orientation);
            }
        }
    }

    /// Builds the report for a fully evaluated binding.
    pub fn instance(&self, ctx: &Context<'_>) -> TemplateInstance {
        let ct = ctx.ct;
        let sit = &ctx.situation.objects;
        let mapping = (0..ct.object_count())
            .map(|o| Pairing {
                template_object: ct.object(o).id.clone(),
                situation_object: sit[self.binding[o].expect("complete binding")].id.clone(),
            })
            .collect();
        let constraints: Vec<ConstraintResult> = ct
            .constraints()
            .iter()
            .enumerate()
            .map(|(i, node)| {
                let inst = self.results[i].as_ref().expect("evaluated constraint");
                ConstraintResult {
                    id: node.id.clone(),
                    kind: inst.kind,
                    proximity: inst.proximity,
                    components: inst
                        .components
                        .iter()
                        .map(|&(component, degree)| ComponentDegree { component, degree })
                        .collect(),
                    reference: self.reference(ctx, i, node.reference),
                    members: inst.members.iter().map(|m| m.location).collect(),
                }
            })
            .collect();
        let weakest = constraints
            .iter()
            .reduce(|best, c| if c.proximity < best.proximity { c } else { best })
            .expect("templates have constraints");
        let (overall, weakest) = (weakest.proximity, weakest.id.clone());
        let mut assignments = Vec::new();
        for o in 0..ct.object_count() {
            let s = &sit[self.binding[o].expect("complete binding")];
            let attributes: BTreeMap<String, String> = ct
                .object(o)
                .attributes
                .iter()
                .filter(|(k, _)| !s.attributes.contains_key(*k))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect();
            let orientation = if self.hypothesized[o] { self.orientation[o] } else { None };
            if orientation.is_some() || !attributes.is_empty() {
                assignments.push(Assignment {
                    situation_object: s.id.clone(),
                    orientation,
                    attributes,
                });
            }
        }
        TemplateInstance { mapping, constraints, overall, weakest, assignments }
    }
}

/// Outcome of grading one complete mapping.
#[derive(Debug, Clone, PartialEq)]
pub enum Evaluation {
    Instance(TemplateInstance),
    /// Some constraint scored 0, so the mapping is not an instance. The
    /// breakdown is reported anyway.
    BelowZero {
        failed: Vec<String>,
        breakdown: TemplateInstance,
    },
}

impl Evaluation {
    pub fn breakdown(&self) -> &TemplateInstance {
        match self {
            Evaluation::Instance(i) => i,
            Evaluation::BelowZero { breakdown, .. } => breakdown,
        }
    }

    pub fn into_instance(self) -> Option<TemplateInstance> {
        match self {
            Evaluation::Instance(i) => Some(i),
            Evaluation::BelowZero { .. } => None,
        }
    }
}

/// Grades a complete mapping from template object ids to situation object
/// ids, following the same plan order as the search.
pub fn evaluate_assignment(
    ct: &CompiledTemplate,
    situation: &Situation,
    mapping: &BTreeMap<String, String>,
) -> Result<Evaluation, RecognitionError> {
    let ctx = Context::new(ct, situation)?;
    let mut state = State::new(&ctx);
    for (t, s) in mapping {
        let o = ct
            .object_index(t)
            .ok_or_else(|| RecognitionError::InvalidMapping(format!("unknown template object `{t}`")))?;
        let si = situation
            .object_index(s)
            .ok_or_else(|| RecognitionError::InvalidMapping(format!("unknown situation object `{s}`")))?;
        if state.used[si] {
            return Err(RecognitionError::InvalidMapping(format!("`{s}` is used twice")));
        }
        if !compatible(ct, o, &situation.objects[si]) {
            return Err(RecognitionError::InvalidMapping(format!("`{s}` cannot play `{t}`")));
        }
        state.bind(&ctx, o, si);
    }
    if let Some(o) = state.binding.iter().position(Option::is_none) {
        return Err(RecognitionError::InvalidMapping(format!("`{}` is unmapped", ct.object(o).id)));
    }
    state.evaluate_all(&ctx);
    let breakdown = state.instance(&ctx);
    let failed: Vec<String> = breakdown
        .constraints
        .iter()
        .filter(|c| c.proximity <= 0.0)
        .map(|c| c.id.clone())
        .collect();
    Ok(if failed.is_empty() {
        Evaluation::Instance(breakdown)
    } else {
        Evaluation::BelowZero { failed, breakdown }
    })
}
