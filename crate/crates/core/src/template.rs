//! Spatial templates: an attribute schema, typed objects and a DAG of fuzzy
//! geometric constraints.
//!
//! [`Template`] is the plain interchange form. [`Template::compile`] validates
//! it and produces a [`CompiledTemplate`] with index-based arguments, the
//! objects each constraint uses directly or indirectly, and the evaluation
//! plan followed by recognition.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fgr::{Component, FgrKind, FgrSpec, RefMode};
use crate::fuzzy::{Domain, FuzzySet};

pub const ANGLE_CONVENTION: &str = "degrees_ccw_from_x";
pub const DISTANCE_CONVENTION: &str = "meters";

/// Units stated by every interchange file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Conventions {
    pub angles: String,
    pub distances: String,
}

impl Default for Conventions {
    fn default() -> Self {
        Self {
            angles: ANGLE_CONVENTION.to_owned(),
            distances: DISTANCE_CONVENTION.to_owned(),
        }
    }
}

impl Conventions {
    pub fn is_supported(&self) -> bool {
        self.angles == ANGLE_CONVENTION && self.distances == DISTANCE_CONVENTION
    }
}

/// Enumerated attributes. Location and orientation are built in and may not
/// be redeclared.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AttributeSchema {
    #[serde(default)]
    pub attributes: BTreeMap<String, Vec<String>>,
}

impl AttributeSchema {
    pub fn allows(&self, attribute: &str, value: &str) -> Option<bool> {
        self.attributes
            .get(attribute)
            .map(|values| values.iter().any(|v| v == value))
    }
}

/// A template object. Attributes it does not mention are unconstrained.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TemplateObject {
    pub id: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub attributes: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectArg {
    pub object: String,
}

/// A nested relation used as an argument. Its reference point is computed
/// with `reference` when given, else with the child's own mode.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FgrArg {
    pub fgr: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference: Option<RefMode>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ArgRef {
    Object(ObjectArg),
    Fgr(FgrArg),
}

impl ArgRef {
    pub fn object(id: impl Into<String>) -> Self {
        ArgRef::Object(ObjectArg { object: id.into() })
    }

    pub fn fgr(id: impl Into<String>) -> Self {
        ArgRef::Fgr(FgrArg { fgr: id.into(), reference: None })
    }

    pub fn fgr_with(id: impl Into<String>, reference: RefMode) -> Self {
        ArgRef::Fgr(FgrArg { fgr: id.into(), reference: Some(reference) })
    }
}

impl fmt::Display for ArgRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArgRef::Object(o) => write!(f, "object {}", o.object),
            ArgRef::Fgr(g) => write!(f, "fgr {}", g.fgr),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstraintNode {
    pub id: String,
    /// Reference-point mode exposed to parents.
    #[serde(default)]
    pub reference: RefMode,
    pub args: Vec<ArgRef>,
    pub relation: FgrSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Template {
    pub id: String,
    #[serde(default)]
    pub conventions: Conventions,
    #[serde(default)]
    pub schema: AttributeSchema,
    pub objects: Vec<TemplateObject>,
    pub constraints: Vec<ConstraintNode>,
}

/// One well-formedness problem found by [`validate_template`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("template has no constraints")]
    NoConstraints,
    #[error("unsupported conventions: angles `{angles}`, distances `{distances}`")]
    UnsupportedConventions { angles: String, distances: String },
    #[error("attribute `{0}` is built in and cannot be enumerated")]
    ReservedAttribute(String),
    #[error("attribute `{0}` has an empty enumeration")]
    EmptyEnumeration(String),
    #[error("attribute `{attribute}` lists value `{value}` twice")]
    DuplicateValue { attribute: String, value: String },
    #[error("duplicate object id `{0}`")]
    DuplicateObject(String),
    #[error("duplicate constraint id `{0}`")]
    DuplicateConstraint(String),
    #[error("object `{object}` uses attribute `{attribute}` missing from the schema")]
    UnknownAttribute { object: String, attribute: String },
    #[error("object `{object}` requires {attribute} = `{value}`, outside the schema")]
    ValueOutsideSchema { object: String, attribute: String, value: String },
    #[error("constraint `{constraint}` references unknown object `{object}`")]
    DanglingObject { constraint: String, object: String },
    #[error("constraint `{constraint}` references unknown constraint `{target}`")]
    DanglingConstraint { constraint: String, target: String },
    #[error("constraint `{constraint}` ({kind}) takes {expected} arguments, got {found}")]
    ArityMismatch {
        constraint: String,
        kind: FgrKind,
        expected: usize,
        found: usize,
    },
    #[error("alignment `{constraint}` has {members} member sets and {gaps} gap sets; needs n >= 2 and n - 1 gaps")]
    AlignmentSetCount { constraint: String, members: usize, gaps: usize },
    #[error("constraint `{constraint}`: set `{component}` must be {expected:?}")]
    DomainMismatch {
        constraint: String,
        component: Component,
        expected: Domain,
    },
    #[error("trapezoidal section `{0}` needs a bounded vector set to project on")]
    AnyDirection(String),
    #[error("constraint `{constraint}` lists {arg} more than once")]
    DuplicateArgument { constraint: String, arg: String },
    #[error("cycle: {}", .0.join(" -> "))]
    Cycle(Vec<String>),
    #[error("object `{0}` is not used by any constraint")]
    UnreferencedObject(String),
}

/// Outcome of template validation; empty when the template is well formed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("template is valid");
        }
        write!(f, "{} violation(s)", self.violations.len())?;
        for v in &self.violations {
            write!(f, "\n  - {v}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ValidationReport {}

pub fn validate_template(t: &Template) -> ValidationReport {
    match t.compile() {
        Ok(_) => ValidationReport::default(),
        Err(r) => r,
    }
}

/// Constraint ids in a deterministic bottom-up order.
pub fn topological_order(t: &Template) -> Result<Vec<String>, ValidationReport> {
    let ct = t.compile()?;
    Ok(ct.topological_order().map(str::to_owned).collect())
}

/// Resolved constraint argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arg {
    Object(usize),
    Fgr { constraint: usize, mode: RefMode },
}

#[derive(Debug, Clone)]
pub struct CompiledConstraint {
    pub id: String,
    pub spec: FgrSpec,
    pub reference: RefMode,
    pub args: Vec<Arg>,
    /// Objects used directly or indirectly, ascending by index.
    pub objects: Vec<usize>,
    /// Distinct objects used directly, in argument order.
    pub direct_objects: Vec<usize>,
}

/// A validated template in index form.
#[derive(Debug, Clone)]
pub struct CompiledTemplate {
    template: Template,
    object_index: HashMap<String, usize>,
    constraints: Vec<CompiledConstraint>,
    topo: Vec<usize>,
    plan: Vec<usize>,
    roots: Vec<usize>,
}

impl Template {
    pub fn compile(&self) -> Result<CompiledTemplate, ValidationReport> {
        Compiler::new(self).run()
    }
}

impl CompiledTemplate {
    pub fn template(&self) -> &Template {
        &self.template
    }

    pub fn id(&self) -> &str {
        &self.template.id
    }

    pub fn object_count(&self) -> usize {
        self.template.objects.len()
    }

    pub fn object(&self, index: usize) -> &TemplateObject {
        &self.template.objects[index]
    }

    pub fn object_index(&self, id: &str) -> Option<usize> {
        self.object_index.get(id).copied()
    }

    pub fn constraints(&self) -> &[CompiledConstraint] {
        &self.constraints
    }

    pub fn constraint_index(&self, id: &str) -> Option<usize> {
        self.constraints.iter().position(|c| c.id == id)
    }

    pub fn topological_order(&self) -> impl Iterator<Item = &str> + '_ {
        self.topo.iter().map(|&i| self.constraints[i].id.as_str())
    }

    /// Evaluation order: topological, picking among ready constraints the one
    /// with the fewest objects not yet bound, ties by declaration order.
    pub fn plan(&self) -> &[usize] {
        &self.plan
    }

    /// Constraints no other constraint uses.
    pub fn roots(&self) -> &[usize] {
        &self.roots
    }
}

struct Compiler<'t> {
    t: &'t Template,
    report: ValidationReport,
}

impl<'t> Compiler<'t> {
    fn new(t: &'t Template) -> Self {
        Self { t, report: ValidationReport::default() }
    }

    fn flag(&mut self, v: Violation) {
        self.report.violations.push(v);
    }

    fn run(mut self) -> Result<CompiledTemplate, ValidationReport> {
        let t = self.t;
        if t.constraints.is_empty() {
            self.flag(Violation::NoConstraints);
        }
        if !t.conventions.is_supported() {
            self.flag(Violation::UnsupportedConventions {
                angles: t.conventions.angles.clone(),
                distances: t.conventions.distances.clone(),
            });
        }
        self.check_schema();
        let object_index = self.index_objects();
        let constraint_index = self.index_constraints();

        let mut args = Vec::with_capacity(t.constraints.len());
        for c in &t.constraints {
            args.push(self.resolve_args(c, &object_index, &constraint_index));
            self.check_relation(c);
        }

        let mut used = vec![false; t.objects.len()];
        for a in args.iter().flatten() {
            if let Arg::Object(o) = a {
                used[*o] = true;
            }
        }
        for (o, u) in t.objects.iter().zip(&used) {
            if !u {
                self.flag(Violation::UnreferencedObject(o.id.clone()));
            }
        }

        let topo = match self.order(&args) {
            Some(order) => order,
            None => return Err(self.report),
        };
        if !self.report.is_ok() {
            return Err(self.report);
        }

        let mut constraints: Vec<CompiledConstraint> = Vec::with_capacity(args.len());
        let mut transitive: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); args.len()];
        for &c in &topo {
            let mut set = BTreeSet::new();
            for a in &args[c] {
                match *a {
                    Arg::Object(o) => {
                        set.insert(o);
                    }
                    Arg::Fgr { constraint, .. } => set.extend(transitive[constraint].iter().copied()),
                }
            }
            transitive[c] = set;
        }
        for (i, (node, a)) in t.constraints.iter().zip(args).enumerate() {
            let mut direct = Vec::new();
            for arg in &a {
                if let Arg::Object(o) = *arg {
                    if !direct.contains(&o) {
                        direct.push(o);
                    }
                }
            }
            constraints.push(CompiledConstraint {
                id: node.id.clone(),
                spec: node.relation.clone(),
                reference: node.reference,
                args: a,
                objects: transitive[i].iter().copied().collect(),
                direct_objects: direct,
            });
        }

        let mut referenced = vec![false; constraints.len()];
        for c in &constraints {
            for a in &c.args {
                if let Arg::Fgr { constraint, .. } = a {
                    referenced[*constraint] = true;
                }
            }
        }
        let roots = (0..constraints.len()).filter(|&i| !referenced[i]).collect();
        let plan = plan_order(&constraints, t.objects.len());

        Ok(CompiledTemplate {
            template: t.clone(),
            object_index,
            constraints,
            topo,
            plan,
            roots,
        })
    }

    fn check_schema(&mut self) {
        for (name, values) in &self.t.schema.attributes {
            if name == "location" || name == "orientation" {
                self.flag(Violation::ReservedAttribute(name.clone()));
            }
            if values.is_empty() {
                self.flag(Violation::EmptyEnumeration(name.clone()));
            }
            let mut seen = BTreeSet::new();
            for v in values {
                if !seen.insert(v) {
                    self.flag(Violation::DuplicateValue { attribute: name.clone(), value: v.clone() });
                }
            }
        }
        for o in &self.t.objects {
            for (attribute, value) in &o.attributes {
                match self.t.schema.allows(attribute, value) {
                    None => self.flag(Violation::UnknownAttribute {
                        object: o.id.clone(),
                        attribute: attribute.clone(),
                    }),
                    Some(false) => self.flag(Violation::ValueOutsideSchema {
                        object: o.id.clone(),
                        attribute: attribute.clone(),
                        value: value.clone(),
                    }),
                    Some(true) => {}
                }
            }
        }
    }

    fn index_objects(&mut self) -> HashMap<String, usize> {
        let mut index = HashMap::new();
        for (i, o) in self.t.objects.iter().enumerate() {
            if index.insert(o.id.clone(), i).is_some() {
                self.flag(Violation::DuplicateObject(o.id.clone()));
            }
        }
        index
    }

    fn index_constraints(&mut self) -> HashMap<String, usize> {
        let mut index = HashMap::new();
        for (i, c) in self.t.constraints.iter().enumerate() {
            if index.insert(c.id.clone(), i).is_some() {
                self.flag(Violation::DuplicateConstraint(c.id.clone()));
            }
        }
        index
    }

    fn resolve_args(
        &mut self,
        c: &ConstraintNode,
        objects: &HashMap<String, usize>,
        constraints: &HashMap<String, usize>,
    ) -> Vec<Arg> {
        let mut out = Vec::with_capacity(c.args.len());
        let mut seen = BTreeSet::new();
        for a in &c.args {
            if !seen.insert(a.to_string()) {
                self.flag(Violation::DuplicateArgument { constraint: c.id.clone(), arg: a.to_string() });
            }
            match a {
                ArgRef::Object(o) => match objects.get(&o.object) {
                    Some(&i) => out.push(Arg::Object(i)),
                    None => self.flag(Violation::DanglingObject {
                        constraint: c.id.clone(),
                        object: o.object.clone(),
                    }),
                },
                ArgRef::Fgr(g) => match constraints.get(&g.fgr) {
                    Some(&i) => out.push(Arg::Fgr {
                        constraint: i,
                        mode: g.reference.unwrap_or(self.t.constraints[i].reference),
                    }),
                    None => self.flag(Violation::DanglingConstraint {
                        constraint: c.id.clone(),
                        target: g.fgr.clone(),
                    }),
                },
            }
        }
        out
    }

    fn check_relation(&mut self, c: &ConstraintNode) {
        let spec = &c.relation;
        if let FgrSpec::Alignment { gaps, members, .. } = spec {
            if members.len() < 2 || gaps.len() + 1 != members.len() {
                self.flag(Violation::AlignmentSetCount {
                    constraint: c.id.clone(),
                    members: members.len(),
                    gaps: gaps.len(),
                });
            }
        }
        if c.args.len() != spec.arity() {
            self.flag(Violation::ArityMismatch {
                constraint: c.id.clone(),
                kind: spec.kind(),
                expected: spec.arity(),
                found: c.args.len(),
            });
        }
        for slot in spec.slots() {
            if let Some(d) = slot.set.domain() {
                if d != slot.domain {
                    self.flag(Violation::DomainMismatch {
                        constraint: c.id.clone(),
                        component: slot.component,
                        expected: slot.domain,
                    });
                }
            }
        }
        if let FgrSpec::TrapezoidalSection { vector: FuzzySet::Any, .. } = spec {
            self.flag(Violation::AnyDirection(c.id.clone()));
        }
    }

    /// Stable Kahn ordering; on a cycle, reports it and returns `None`.
    fn order(&mut self, args: &[Vec<Arg>]) -> Option<Vec<usize>> {
        let n = args.len();
        let children = |c: usize| {
            args[c].iter().filter_map(|a| match a {
                Arg::Fgr { constraint, .. } => Some(*constraint),
                Arg::Object(_) => None,
            })
        };
        let mut pending: Vec<usize> = (0..n).map(|c| children(c).collect::<BTreeSet<_>>().len()).collect();
        let mut parents: Vec<Vec<usize>> = vec![Vec::new(); n];
        for c in 0..n {
            for child in children(c).collect::<BTreeSet<_>>() {
                parents[child].push(c);
            }
        }
        let mut ready: BTreeSet<usize> = (0..n).filter(|&c| pending[c] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(c) = ready.pop_first() {
            order.push(c);
            for &p in &parents[c] {
                pending[p] -= 1;
                if pending[p] == 0 {
                    ready.insert(p);
                }
            }
        }
        if order.len() == n {
            return Some(order);
        }
        let remaining: BTreeSet<usize> = (0..n).filter(|c| pending[*c] > 0).collect();
        let start = *remaining.first().expect("cycle members");
        // Walk child edges inside the remaining set until a node repeats.
        let mut path = vec![start];
        let mut cur = start;
        loop {
            let next = children(cur).find(|c| remaining.contains(c)).expect("node on a cycle");
            if let Some(pos) = path.iter().position(|&p| p == next) {
                let mut cycle: Vec<String> =
                    path[pos..].iter().map(|&i| self.t.constraints[i].id.clone()).collect();
                cycle.push(self.t.constraints[next].id.clone());
                self.flag(Violation::Cycle(cycle));
                return None;
            }
            path.push(next);
            cur = next;
        }
    }
}

fn plan_order(constraints: &[CompiledConstraint], object_count: usize) -> Vec<usize> {
    let n = constraints.len();
    let mut done = vec![false; n];
    let mut bound = vec![false; object_count];
    let mut plan = Vec::with_capacity(n);
    for _ in 0..n {
        let next = (0..n)
            .filter(|&c| !done[c])
            .filter(|&c| {
                constraints[c].args.iter().all(|a| match a {
                    Arg::Fgr { constraint, .. } => done[*constraint],
                    Arg::Object(_) => true,
                })
            })
            .min_by_key(|&c| {
                let free = constraints[c].direct_objects.iter().filter(|&&o| !bound[o]).count();
                (free, c)
            })
            .expect("acyclic");
        done[next] = true;
        for &o in &constraints[next].direct_objects {
            bound[o] = true;
        }
        plan.push(next);
    }
    plan
}

/// Upper bound on pairwise member distances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpanBound {
    Bounded(f64),
    Unbounded,
}

impl SpanBound {
    pub fn admits(self, distance: f64) -> bool {
        match self {
            SpanBound::Bounded(b) => distance <= b,
            SpanBound::Unbounded => true,
        }
    }
}

fn linear_max(set: &FuzzySet) -> Option<f64> {
    set.support_max().map(|d| d.max(0.0))
}

fn linear_abs_max(set: &FuzzySet) -> Option<f64> {
    set.trapezoid().map(|t| {
        let [a, .., d] = t.unwrapped();
        a.abs().max(d.abs())
    })
}

/// Sound bound on the distance between any two direct members of a relation
/// whose proximity reaches `threshold` and is positive.
///
/// Isosceles triangles constrain the apex only through the shape measure, so
/// their bound depends on the threshold and is unbounded at 0.
pub fn max_span_bound(spec: &FgrSpec, threshold: f64) -> SpanBound {
    let bound = match spec {
        FgrSpec::RingSector { distance, .. } => linear_max(distance),
        FgrSpec::TrapezoidalSection { distance, vector, .. } => {
            let half = vector.trapezoid().map(|t| t.support_half_width());
            match (linear_max(distance), half) {
                (Some(d), Some(h)) if h < 90.0 => Some(d / h.to_radians().cos()),
                _ => None,
            }
        }
        FgrSpec::Alignment { gaps, .. } => {
            let total: Option<f64> = gaps.iter().map(linear_abs_max).sum();
            let n = gaps.len() + 1;
            total.map(|s| if n <= 2 { s } else { s * (1.0 + n as f64 / 2.0).sqrt() })
        }
        FgrSpec::EquilateralTriangle { side, .. } => linear_max(side).map(|s| 1.5 * s),
        FgrSpec::RectangleTriangle { base, height, .. } | FgrSpec::Rectangle { base, height, .. } => {
            linear_max(base).zip(linear_max(height)).map(|(b, h)| b + h)
        }
        FgrSpec::IsoscelesTriangle { base, height, .. } => {
            let slack = (threshold * std::f64::consts::FRAC_PI_2).tan();
            match (linear_max(base), linear_max(height)) {
                (Some(b), Some(h)) if slack > 0.0 => Some(b + h + h / slack),
                _ => None,
            }
        }
    };
    bound.map_or(SpanBound::Unbounded, SpanBound::Bounded)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{OrientedPoint, Point2};
    use proptest::prelude::*;

    fn any3() -> FgrSpec {
        FgrSpec::RingSector {
            distance: FuzzySet::linear(6.0, 7.0, 8.0, 9.0).unwrap(),
            vector: FuzzySet::Any,
            orien_b: FuzzySet::Any,
        }
    }

    fn obj(id: &str) -> TemplateObject {
        TemplateObject { id: id.into(), attributes: BTreeMap::new() }
    }

    fn node(id: &str, args: Vec<ArgRef>, relation: FgrSpec) -> ConstraintNode {
        ConstraintNode { id: id.into(), reference: RefMode::default(), args, relation }
    }

    fn template(objects: &[&str], constraints: Vec<ConstraintNode>) -> Template {
        Template {
            id: "t".into(),
            conventions: Conventions::default(),
            schema: AttributeSchema::default(),
            objects: objects.iter().map(|o| obj(o)).collect(),
            constraints,
        }
    }

    fn violations(t: &Template) -> Vec<Violation> {
        validate_template(t).violations
    }

    #[test]
    fn two_cycle_is_reported() {
        let t = template(
            &["a", "b"],
            vec![
                node("X", vec![ArgRef::fgr("Y"), ArgRef::object("a")], any3()),
                node("Y", vec![ArgRef::fgr("X"), ArgRef::object("b")], any3()),
            ],
        );
        assert_eq!(violations(&t), vec![Violation::Cycle(vec!["X".into(), "Y".into(), "X".into()])]);
    }

    #[test]
    fn ring_sector_with_three_args() {
        let t = template(
            &["a", "b", "c"],
            vec![node(
                "R",
                vec![ArgRef::object("a"), ArgRef::object("b"), ArgRef::object("c")],
                any3(),
            )],
        );
        assert!(matches!(
            violations(&t).as_slice(),
            [Violation::ArityMismatch { expected: 2, found: 3, .. }]
        ));
    }

    #[test]
    fn structural_violations() {
        let t = template(
            &["a", "a", "z"],
            vec![node("R", vec![ArgRef::object("a"), ArgRef::object("q")], any3())],
        );
        let v = violations(&t);
        assert!(v.contains(&Violation::DuplicateObject("a".into())));
        assert!(v.contains(&Violation::DanglingObject { constraint: "R".into(), object: "q".into() }));
        assert!(v.contains(&Violation::UnreferencedObject("z".into())));

        let t = template(&["a"], vec![]);
        assert!(violations(&t).contains(&Violation::NoConstraints));

        let t = template(
            &["a", "b"],
            vec![node("R", vec![ArgRef::object("a"), ArgRef::object("a")], any3())],
        );
        assert!(violations(&t).iter().any(|v| matches!(v, Violation::DuplicateArgument { .. })));

        let t = template(
            &["a", "b"],
            vec![node("R", vec![ArgRef::fgr("NOPE"), ArgRef::object("b")], any3())],
        );
        assert!(violations(&t).contains(&Violation::DanglingConstraint {
            constraint: "R".into(),
            target: "NOPE".into()
        }));
    }

    #[test]
    fn set_level_violations() {
        let trap = FgrSpec::TrapezoidalSection {
            distance: FuzzySet::circular(0.0, 1.0, 2.0, 3.0).unwrap(),
            vector: FuzzySet::Any,
            orien_b: FuzzySet::Any,
        };
        let t = template(&["a", "b"], vec![node("T", vec![ArgRef::object("a"), ArgRef::object("b")], trap)]);
        let v = violations(&t);
        assert!(v.contains(&Violation::AnyDirection("T".into())));
        assert!(v.contains(&Violation::DomainMismatch {
            constraint: "T".into(),
            component: Component::ProjectedDistance,
            expected: Domain::Linear,
        }));

        let align = FgrSpec::Alignment {
            gaps: vec![FuzzySet::Any],
            orientation: FuzzySet::Any,
            members: vec![FuzzySet::Any; 3],
        };
        let args = vec![ArgRef::object("a"), ArgRef::object("b"), ArgRef::object("c")];
        let t = template(&["a", "b", "c"], vec![node("L", args, align)]);
        assert!(matches!(violations(&t).as_slice(), [Violation::AlignmentSetCount { members: 3, gaps: 1, .. }]));
    }

    #[test]
    fn schema_violations() {
        let mut t = template(&["a", "b"], vec![node("R", vec![ArgRef::object("a"), ArgRef::object("b")], any3())]);
        t.schema.attributes.insert("type".into(), vec!["A".into(), "B".into()]);
        t.schema.attributes.insert("orientation".into(), vec!["x".into()]);
        t.schema.attributes.insert("color".into(), vec![]);
        t.objects[0].attributes.insert("type".into(), "C".into());
        t.objects[1].attributes.insert("size".into(), "big".into());
        let v = violations(&t);
        assert!(v.contains(&Violation::ReservedAttribute("orientation".into())));
        assert!(v.contains(&Violation::EmptyEnumeration("color".into())));
        assert!(v.contains(&Violation::ValueOutsideSchema {
            object: "a".into(),
            attribute: "type".into(),
            value: "C".into()
        }));
        assert!(v.contains(&Violation::UnknownAttribute { object: "b".into(), attribute: "size".into() }));
    }

    #[test]
    fn single_and_independent_constraints() {
        let t = template(&["a", "b"], vec![node("R", vec![ArgRef::object("a"), ArgRef::object("b")], any3())]);
        assert_eq!(topological_order(&t).unwrap(), vec!["R"]);

        let t = template(
            &["a", "b", "c", "d"],
            vec![
                node("Q", vec![ArgRef::object("c"), ArgRef::object("d")], any3()),
                node("P", vec![ArgRef::object("a"), ArgRef::object("b")], any3()),
            ],
        );
        assert_eq!(topological_order(&t).unwrap(), vec!["Q", "P"]);
    }

    #[test]
    fn plan_prefers_fewest_unbound_objects() {
        // P binds a,b; Q shares b and adds c; R is independent with d,e.
        // After P, Q has one free slot and R two, so Q goes first.
        let t = template(
            &["a", "b", "c", "d", "e"],
            vec![
                node("P", vec![ArgRef::object("a"), ArgRef::object("b")], any3()),
                node("R", vec![ArgRef::object("d"), ArgRef::object("e")], any3()),
                node("Q", vec![ArgRef::object("b"), ArgRef::object("c")], any3()),
            ],
        );
        let ct = t.compile().unwrap();
        let ids: Vec<&str> = ct.plan().iter().map(|&i| ct.constraints()[i].id.as_str()).collect();
        assert_eq!(ids, vec!["P", "Q", "R"]);
        assert_eq!(ct.topological_order().collect::<Vec<_>>(), vec!["P", "R", "Q"]);
        assert_eq!(ct.roots(), &[0, 1, 2]);
    }

    #[test]
    fn transitive_objects_and_modes() {
        let t = template(
            &["a", "b", "c"],
            vec![
                node("TOP", vec![ArgRef::fgr_with("LOW", RefMode::BasePairCom), ArgRef::object("c")], any3()),
                node("LOW", vec![ArgRef::object("a"), ArgRef::object("b")], any3()),
            ],
        );
        let ct = t.compile().unwrap();
        let top = &ct.constraints()[0];
        assert_eq!(top.objects, vec![0, 1, 2]);
        assert_eq!(top.direct_objects, vec![2]);
        assert_eq!(top.args[0], Arg::Fgr { constraint: 1, mode: RefMode::BasePairCom });
        assert_eq!(ct.roots(), &[0]);
        assert_eq!(ct.topological_order().collect::<Vec<_>>(), vec!["LOW", "TOP"]);
    }

    #[test]
    fn span_bound_examples() {
        assert_eq!(max_span_bound(&any3(), 0.0), SpanBound::Bounded(9.0));
        let gap = FuzzySet::linear(4.0, 5.0, 5.0, 6.0).unwrap();
        let pair = FgrSpec::Alignment { gaps: vec![gap], orientation: FuzzySet::Any, members: vec![FuzzySet::Any; 2] };
        assert_eq!(max_span_bound(&pair, 0.0), SpanBound::Bounded(6.0));
        let iso = FgrSpec::IsoscelesTriangle {
            base: FuzzySet::Any,
            height: FuzzySet::linear(1.0, 2.0, 2.0, 3.0).unwrap(),
            orien_a: FuzzySet::Any,
            orien_b: FuzzySet::Any,
            orien_c: FuzzySet::Any,
        };
        assert_eq!(max_span_bound(&iso, 0.5), SpanBound::Unbounded);
        assert!(SpanBound::Bounded(20.0).admits(20.0));
        assert!(!SpanBound::Bounded(20.0).admits(100.0));
    }

    #[test]
    fn gap_sum_alone_does_not_bound_an_alignment() {
        // Unit square corners listed column by column: the fitted axis is +x
        // (isotropic covariance), along-gaps are 0, 1, 0, yet the diagonal is √2.
        let gaps = vec![
            FuzzySet::linear(-0.01, 0.0, 0.0, 0.01).unwrap(),
            FuzzySet::linear(0.9, 1.0, 1.0, 1.1).unwrap(),
            FuzzySet::linear(-0.01, 0.0, 0.0, 0.01).unwrap(),
        ];
        let spec = FgrSpec::Alignment { gaps, orientation: FuzzySet::Any, members: vec![FuzzySet::Any; 4] };
        let pts = [(0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0)].map(|(x, y)| OrientedPoint::unoriented(x, y));
        let inst = spec.evaluate(&pts);
        assert!(inst.proximity > 0.0);
        let naive_sum = 0.01 + 1.1 + 0.01;
        assert!(2f64.sqrt() > naive_sum);
        let SpanBound::Bounded(b) = max_span_bound(&spec, 0.0) else { panic!() };
        assert!(b >= 2f64.sqrt());
    }

    fn arb_linear(lo: f64, hi: f64) -> impl Strategy<Value = FuzzySet> {
        prop::array::uniform4(lo..hi).prop_map(|mut p| {
            p.sort_by(f64::total_cmp);
            FuzzySet::linear(p[0], p[1], p[2], p[3]).unwrap()
        })
    }

    fn arb_circular() -> impl Strategy<Value = FuzzySet> {
        (0.0..360.0, prop::array::uniform3(0.0..70.0)).prop_map(|(a, w)| {
            FuzzySet::circular(a, a + w[0], a + w[0] + w[1], a + w[0] + w[1] + w[2]).unwrap()
        })
    }

    fn arb_spec() -> impl Strategy<Value = FgrSpec> {
        let d = || arb_linear(0.5, 12.0);
        let any = || Just(FuzzySet::Any);
        prop_oneof![
            (d(), d()).prop_map(move |(base, height)| FgrSpec::IsoscelesTriangle {
                base,
                height,
                orien_a: FuzzySet::Any,
                orien_b: FuzzySet::Any,
                orien_c: FuzzySet::Any,
            }),
            d().prop_map(|side| FgrSpec::EquilateralTriangle {
                side,
                orien_a: FuzzySet::Any,
                orien_b: FuzzySet::Any,
                orien_c: FuzzySet::Any,
            }),
            (d(), d()).prop_map(|(base, height)| FgrSpec::RectangleTriangle {
                base,
                height,
                orien_a: FuzzySet::Any,
                orien_b: FuzzySet::Any,
                orien_c: FuzzySet::Any,
            }),
            (d(), d()).prop_map(|(base, height)| FgrSpec::Rectangle {
                base,
                height,
                orien_a: FuzzySet::Any,
                orien_b: FuzzySet::Any,
                orien_c: FuzzySet::Any,
                orien_d: FuzzySet::Any,
            }),
            (d(), any()).prop_map(|(distance, vector)| FgrSpec::RingSector { distance, vector, orien_b: FuzzySet::Any }),
            (arb_linear(-4.0, 12.0), arb_circular()).prop_map(|(distance, vector)| FgrSpec::TrapezoidalSection {
                distance,
                vector,
                orien_b: FuzzySet::Any,
            }),
            prop::collection::vec(arb_linear(-6.0, 6.0), 1..4).prop_map(|gaps| {
                let n = gaps.len() + 1;
                FgrSpec::Alignment { gaps, orientation: FuzzySet::Any, members: vec![FuzzySet::Any; n] }
            }),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10000))]
        #[test]
        fn span_bound_is_sound(
            spec in arb_spec(),
            coords in prop::collection::vec((-15.0..15.0f64, -15.0..15.0f64, 0.0..360.0f64), 4),
            scale in 0.05..1.0f64,
            threshold in prop_oneof![Just(0.0), 0.0..1.0f64],
        ) {
            let members: Vec<OrientedPoint> = coords[..spec.arity()]
                .iter()
                .map(|&(x, y, o)| OrientedPoint::oriented(scale * x, scale * y, o))
                .collect();
            let inst = spec.evaluate(&members);
            if inst.proximity > 0.0 && inst.proximity >= threshold {
                let bound = max_span_bound(&spec, threshold);
                for (i, p) in members.iter().enumerate() {
                    for q in &members[i + 1..] {
                        let d = Point2::distance(p.location, q.location);
                        prop_assert!(bound.admits(d - 1e-9), "{d} exceeds {bound:?} for {spec:?}");
                    }
                }
            }
        }
    }
}
