//! Values and evaluation of scenario expressions.

use std::collections::HashMap;
use std::fmt;

use super::parser::{Expr, Pos};
use crate::algebra::{self, FiniteEffectAlgebra};
use crate::classical::{self, BoolPredicate, FinMap, FinSet, TaggedElement};
use crate::linalg::{format_real, ComplexMatrix};
use crate::quantum::{self, DensityMatrix, Effect, Isometry, PureState, QPredicate};
use crate::stochastic::{self, Distribution, FuzzyPredicate, Probability, StochasticMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Instance {
    Classical,
    Stochastic,
    Quantum,
}

impl Instance {
    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "classical" => Some(Instance::Classical),
            "stochastic" => Some(Instance::Stochastic),
            "quantum" => Some(Instance::Quantum),
            _ => None,
        }
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Instance::Classical => "classical",
            Instance::Stochastic => "stochastic",
            Instance::Quantum => "quantum",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Number(f64),
    Set(FinSet),
    Subset(BoolPredicate),
    Map(FinMap),
    Tagged(TaggedElement),
    Fuzzy(FuzzyPredicate),
    Dist(Distribution),
    Kernel(StochasticMap),
    Matrix(ComplexMatrix),
    State(PureState),
    Density(DensityMatrix),
    Effect(Effect),
    Pred(QPredicate),
    Iso(Isometry),
    Algebra(FiniteEffectAlgebra),
    Undefined,
    Text(String),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Number(_) => "number",
            Value::Set(_) => "set",
            Value::Subset(_) => "subset",
            Value::Map(_) => "map",
            Value::Tagged(_) => "tagged element",
            Value::Fuzzy(_) => "fuzzy predicate",
            Value::Dist(_) => "distribution",
            Value::Kernel(_) => "kernel",
            Value::Matrix(_) => "matrix",
            Value::State(_) => "pure state",
            Value::Density(_) => "density matrix",
            Value::Effect(_) => "effect",
            Value::Pred(_) => "predicate",
            Value::Iso(_) => "isometry",
            Value::Algebra(_) => "effect algebra",
            Value::Undefined => "undefined",
            Value::Text(_) => "text",
        }
    }

    /// Rendering used in query output; reals get `digits` decimals.
    pub fn render(&self, digits: usize) -> String {
        let reals = |xs: &[f64]| {
            let parts: Vec<String> = xs.iter().map(|&x| format_real(x, digits)).collect();
            format!("({})", parts.join(", "))
        };
        match self {
            Value::Number(x) => format_real(*x, digits),
            Value::Set(s) => format!("{{{}}}", s.labels().join(",")),
            Value::Subset(p) => p.to_string(),
            Value::Map(f) => {
                let parts: Vec<String> = (0..f.source().size())
                    .map(|x| format!("{}->{}", f.source().label(x), f.target().label(f.apply(x))))
                    .collect();
                format!("{{{}}}", parts.join(", "))
            }
            Value::Tagged(t) => t.to_string(),
            Value::Fuzzy(p) => reals(p.values()),
            Value::Dist(d) => reals(d.weights()),
            Value::Kernel(k) => {
                let rows: Vec<String> = (0..k.source().size())
                    .map(|x| reals(k.row(x).weights()))
                    .collect();
                rows.join("; ")
            }
            Value::Matrix(m) => m.to_literal_line(digits),
            Value::State(s) => s.vector().to_literal_line(digits),
            Value::Density(d) => d.matrix().to_literal_line(digits),
            Value::Effect(e) => e.matrix().to_literal_line(digits),
            Value::Iso(f) => f.matrix().to_literal_line(digits),
            Value::Pred(p) => format!(
                "{} | {}",
                p.first().matrix().to_literal_line(digits),
                p.second().matrix().to_literal_line(digits)
            ),
            Value::Algebra(ea) => format!("effect algebra on {} elements", ea.len()),
            Value::Undefined => "undefined".to_string(),
            Value::Text(t) => t.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalError {
    pub pos: Pos,
    pub message: String,
}

type EResult<T> = Result<T, EvalError>;

const COMMON: &[&str] = &[
    "mo",
    "powerset",
    "product",
    "coproduct",
    "downset",
    "opposite",
    "states",
    "axioms",
    "born",
    "substitute",
    "andthen",
    "then",
    "measure",
    "orthosum",
    "multiply",
    "comprehension",
    "complement",
    "char",
    "omega",
    "compose",
    "truth",
    "falsum",
];
const CLASSICAL: &[&str] = &["set", "subset", "map", "predicates"];
const STOCHASTIC: &[&str] = &[
    "set", "dist", "dirac", "uniform", "fuzzy", "point", "constant", "kernel", "prob",
];
const QUANTUM: &[&str] = &[
    "matrix", "ket", "pure", "density", "mixed", "effect", "pred", "pair", "proj", "isometry",
    "identity", "outer", "adjoint", "image",
];

pub fn known_function(instance: Instance, name: &str) -> bool {
    let extra = match instance {
        Instance::Classical => CLASSICAL,
        Instance::Stochastic => STOCHASTIC,
        Instance::Quantum => QUANTUM,
    };
    COMMON.contains(&name) || extra.contains(&name)
}

pub fn constant(instance: Instance, name: &str) -> Option<Value> {
    match instance {
        Instance::Quantum => quantum::named_matrix(name).map(Value::Matrix),
        _ => None,
    }
}

pub struct Env {
    pub instance: Instance,
    pub names: HashMap<String, Value>,
}

impl Env {
    pub fn eval(&self, expr: &Expr) -> EResult<Value> {
        match expr {
            Expr::Number { value, .. } => Ok(Value::Number(*value)),
            Expr::Ident { name, pos } => self
                .names
                .get(name)
                .cloned()
                .or_else(|| constant(self.instance, name))
                .ok_or_else(|| err(*pos, format!("unknown name `{name}`"))),
            Expr::Literal { ctor, text, pos } => {
                literal(ctor, text).map_err(|e| err(*pos, e.to_string()))
            }
            Expr::Call { name, args, pos } => {
                let values = args
                    .iter()
                    .map(|a| self.eval(a))
                    .collect::<EResult<Vec<_>>>()?;
                Call {
                    name,
                    args: &values,
                    pos: *pos,
                }
                .apply(self.instance)
            }
        }
    }
}

fn err(pos: Pos, message: impl Into<String>) -> EvalError {
    EvalError {
        pos,
        message: message.into(),
    }
}

fn literal(ctor: &str, text: &str) -> crate::Result<Value> {
    let m = if ctor == "ket" {
        let n = text
            .split(|c: char| c.is_whitespace() || c == ';' || c == ',')
            .filter(|t| !t.is_empty())
            .count();
        ComplexMatrix::parse_literal(&format!("{n} 1 {text}"))?
    } else {
        ComplexMatrix::parse_literal(text)?
    };
    Ok(Value::Matrix(m))
}

struct Call<'a> {
    name: &'a str,
    args: &'a [Value],
    pos: Pos,
}

impl Call<'_> {
    fn fail<T>(&self, message: impl Into<String>) -> EResult<T> {
        Err(err(self.pos, format!("{}: {}", self.name, message.into())))
    }

    fn lift<T>(&self, r: crate::Result<T>) -> EResult<T> {
        r.or_else(|e| self.fail(e.to_string()))
    }

    fn arity(&self, n: usize) -> EResult<()> {
        if self.args.len() == n {
            Ok(())
        } else {
            self.fail(format!("expected {n} arguments, got {}", self.args.len()))
        }
    }

    fn at_least(&self, n: usize) -> EResult<()> {
        if self.args.len() >= n {
            Ok(())
        } else {
            self.fail(format!(
                "expected at least {n} arguments, got {}",
                self.args.len()
            ))
        }
    }

    fn mismatch<T>(&self, i: usize, want: &str) -> EResult<T> {
        self.fail(format!(
            "argument {} should be a {want}, found a {}",
            i + 1,
            self.args[i].kind()
        ))
    }

    fn number(&self, i: usize) -> EResult<f64> {
        match &self.args[i] {
            Value::Number(x) => Ok(*x),
            _ => self.mismatch(i, "number"),
        }
    }

    fn numbers(&self, from: usize) -> EResult<Vec<f64>> {
        (from..self.args.len()).map(|i| self.number(i)).collect()
    }

    fn count(&self, i: usize) -> EResult<usize> {
        let x = self.number(i)?;
        if x >= 0.0 && x.fract() == 0.0 && x < 1e9 {
            Ok(x as usize)
        } else {
            self.fail(format!(
                "argument {} should be a nonnegative integer, found {x}",
                i + 1
            ))
        }
    }

    fn counts(&self, from: usize) -> EResult<Vec<usize>> {
        (from..self.args.len()).map(|i| self.count(i)).collect()
    }

    fn set(&self, i: usize) -> EResult<FinSet> {
        match &self.args[i] {
            Value::Set(s) => Ok(s.clone()),
            _ => self.mismatch(i, "set"),
        }
    }

    fn algebra(&self, i: usize) -> EResult<&FiniteEffectAlgebra> {
        match &self.args[i] {
            Value::Algebra(a) => Ok(a),
            _ => self.mismatch(i, "effect algebra"),
        }
    }

    fn subset(&self, i: usize) -> EResult<&BoolPredicate> {
        match &self.args[i] {
            Value::Subset(p) => Ok(p),
            _ => self.mismatch(i, "subset"),
        }
    }

    fn finmap(&self, i: usize) -> EResult<&FinMap> {
        match &self.args[i] {
            Value::Map(f) => Ok(f),
            _ => self.mismatch(i, "map"),
        }
    }

    fn fuzzy(&self, i: usize) -> EResult<&FuzzyPredicate> {
        match &self.args[i] {
            Value::Fuzzy(p) => Ok(p),
            _ => self.mismatch(i, "fuzzy predicate"),
        }
    }

    fn dist(&self, i: usize) -> EResult<&Distribution> {
        match &self.args[i] {
            Value::Dist(d) => Ok(d),
            _ => self.mismatch(i, "distribution"),
        }
    }

    fn kernel(&self, i: usize) -> EResult<&StochasticMap> {
        match &self.args[i] {
            Value::Kernel(k) => Ok(k),
            _ => self.mismatch(i, "kernel"),
        }
    }

    fn matrix(&self, i: usize) -> EResult<ComplexMatrix> {
        match &self.args[i] {
            Value::Matrix(m) => Ok(m.clone()),
            Value::State(s) => Ok(s.vector().clone()),
            Value::Density(d) => Ok(d.matrix().clone()),
            Value::Effect(e) => Ok(e.matrix().clone()),
            Value::Iso(f) => Ok(f.matrix().clone()),
            _ => self.mismatch(i, "matrix"),
        }
    }

    fn state(&self, i: usize) -> EResult<PureState> {
        match &self.args[i] {
            Value::State(s) => Ok(s.clone()),
            Value::Matrix(m) => self.lift(PureState::new(m.clone())),
            _ => self.mismatch(i, "pure state"),
        }
    }

    fn effect(&self, i: usize) -> EResult<Effect> {
        match &self.args[i] {
            Value::Effect(e) => Ok(e.clone()),
            Value::Matrix(m) => self.lift(Effect::new(m.clone())),
            Value::Pred(p) => Ok(p.first().clone()),
            _ => self.mismatch(i, "effect"),
        }
    }

    fn pred(&self, i: usize) -> EResult<QPredicate> {
        match &self.args[i] {
            Value::Pred(p) => Ok(p.clone()),
            Value::Effect(_) | Value::Matrix(_) => Ok(QPredicate::from_effect(self.effect(i)?)),
            _ => self.mismatch(i, "predicate"),
        }
    }

    fn isometry(&self, i: usize) -> EResult<Isometry> {
        match &self.args[i] {
            Value::Iso(f) => Ok(f.clone()),
            Value::Matrix(m) => self.lift(Isometry::new(m.clone())),
            _ => self.mismatch(i, "isometry"),
        }
    }

    fn probability(&self, i: usize) -> EResult<Probability> {
        let x = self.number(i)?;
        self.lift(Probability::new(x))
    }

    fn apply(&self, instance: Instance) -> EResult<Value> {
        if let Some(v) = self.common()? {
            return Ok(v);
        }
        match instance {
            Instance::Classical => self.classical(),
            Instance::Stochastic => self.stochastic(),
            Instance::Quantum => self.quantum(),
        }
    }

    fn common(&self) -> EResult<Option<Value>> {
        let v = match self.name {
            "mo" => {
                self.arity(1)?;
                let n = self.count(0)?;
                if n > 1000 {
                    return self.fail("at most 1000 generators");
                }
                Value::Algebra(algebra::mo_free(n))
            }
            "powerset" => {
                self.arity(1)?;
                Value::Algebra(self.lift(algebra::boolean_powerset(self.count(0)?))?)
            }
            "product" => {
                self.arity(2)?;
                Value::Algebra(algebra::product(self.algebra(0)?, self.algebra(1)?))
            }
            "coproduct" => {
                self.arity(2)?;
                Value::Algebra(algebra::coproduct(self.algebra(0)?, self.algebra(1)?))
            }
            "downset" => {
                self.arity(2)?;
                let ea = self.algebra(0)?;
                let x = self.count(1)?;
                Value::Algebra(self.lift(algebra::downset(ea, x))?)
            }
            "opposite" => {
                self.arity(1)?;
                Value::Algebra(algebra::opposite(self.algebra(0)?))
            }
            "axioms" => {
                self.arity(1)?;
                let ea = self.algebra(0)?;
                Value::Text(ea.check_axioms().describe(ea))
            }
            "states" => {
                self.arity(1)?;
                let points = self.lift(classical::stone_states(self.count(0)?))?;
                let list: Vec<String> = points.iter().map(usize::to_string).collect();
                Value::Text(format!("{} (points {})", points.len(), list.join(", ")))
            }
            _ => return Ok(None),
        };
        Ok(Some(v))
    }

    fn classical(&self) -> EResult<Value> {
        let v = match self.name {
            "set" => {
                self.arity(1)?;
                Value::Set(FinSet::new(self.count(0)?))
            }
            "subset" => {
                self.at_least(1)?;
                let x = self.set(0)?;
                Value::Subset(self.lift(BoolPredicate::from_indices(x, &self.counts(1)?))?)
            }
            "truth" => {
                self.arity(1)?;
                Value::Subset(BoolPredicate::truth(self.set(0)?))
            }
            "falsum" => {
                self.arity(1)?;
                Value::Subset(BoolPredicate::falsum(self.set(0)?))
            }
            "map" => {
                self.at_least(2)?;
                Value::Map(self.lift(FinMap::new(self.set(0)?, self.set(1)?, self.counts(2)?))?)
            }
            "complement" => {
                self.arity(1)?;
                Value::Subset(self.subset(0)?.complement())
            }
            "char" => {
                self.arity(1)?;
                Value::Map(classical::char_map(self.subset(0)?))
            }
            "omega" => {
                self.arity(1)?;
                Value::Subset(classical::omega(&self.set(0)?))
            }
            "compose" => {
                self.arity(2)?;
                Value::Map(self.lift(self.finmap(0)?.then(self.finmap(1)?))?)
            }
            "predicates" => {
                self.arity(1)?;
                Value::Algebra(self.lift(classical::predicate_algebra(&self.set(0)?))?)
            }
            "born" => {
                self.arity(2)?;
                let x = self.count(0)?;
                let p = self.subset(1)?;
                self.lift(p.carrier().check_index(x))?;
                Value::Number(if p.contains(x) { 1.0 } else { 0.0 })
            }
            "substitute" => {
                self.arity(2)?;
                Value::Subset(self.lift(classical::substitute(self.finmap(0)?, self.subset(1)?))?)
            }
            "andthen" => {
                self.arity(2)?;
                Value::Subset(self.lift(classical::test_andthen(self.subset(0)?, self.subset(1)?))?)
            }
            "then" => {
                self.arity(2)?;
                Value::Subset(self.lift(classical::test_then(self.subset(0)?, self.subset(1)?))?)
            }
            "multiply" => {
                self.arity(2)?;
                Value::Subset(self.lift(self.subset(0)?.and(self.subset(1)?))?)
            }
            "orthosum" => {
                self.arity(2)?;
                self.lift(classical::orthosum(self.subset(0)?, self.subset(1)?))?
                    .map_or(Value::Undefined, Value::Subset)
            }
            "measure" => {
                self.arity(2)?;
                Value::Tagged(self.lift(classical::measure(self.subset(0)?, self.count(1)?))?)
            }
            "comprehension" => {
                self.arity(1)?;
                Value::Set(classical::comprehension(self.subset(0)?).carrier)
            }
            _ => return self.fail("not available in the classical instance"),
        };
        Ok(v)
    }

    fn stochastic(&self) -> EResult<Value> {
        let v = match self.name {
            "set" => {
                self.arity(1)?;
                Value::Set(FinSet::new(self.count(0)?))
            }
            "prob" => {
                self.arity(1)?;
                Value::Number(self.probability(0)?.value())
            }
            "dist" => {
                self.at_least(1)?;
                Value::Dist(self.lift(Distribution::new(self.set(0)?, self.numbers(1)?))?)
            }
            "dirac" => {
                self.arity(2)?;
                Value::Dist(self.lift(Distribution::dirac(self.set(0)?, self.count(1)?))?)
            }
            "uniform" => {
                self.arity(1)?;
                Value::Dist(self.lift(Distribution::uniform(self.set(0)?))?)
            }
            "fuzzy" => {
                self.at_least(1)?;
                Value::Fuzzy(self.lift(FuzzyPredicate::new(self.set(0)?, self.numbers(1)?))?)
            }
            "truth" => {
                self.arity(1)?;
                Value::Fuzzy(FuzzyPredicate::truth(self.set(0)?))
            }
            "falsum" => {
                self.arity(1)?;
                Value::Fuzzy(FuzzyPredicate::falsum(self.set(0)?))
            }
            "point" => {
                self.arity(2)?;
                Value::Fuzzy(self.lift(FuzzyPredicate::point(self.set(0)?, self.count(1)?))?)
            }
            "constant" => {
                self.arity(2)?;
                Value::Fuzzy(self.lift(FuzzyPredicate::constant(self.set(0)?, self.number(1)?))?)
            }
            "kernel" => {
                self.at_least(2)?;
                let (x, y) = (self.set(0)?, self.set(1)?);
                let weights = self.numbers(2)?;
                if weights.len() != x.size() * y.size() {
                    return self.fail(format!(
                        "expected {} weights for a {} by {} kernel, got {}",
                        x.size() * y.size(),
                        x.size(),
                        y.size(),
                        weights.len()
                    ));
                }
                let rows = weights
                    .chunks(y.size().max(1))
                    .map(<[f64]>::to_vec)
                    .collect();
                let rows = if y.size() == 0 {
                    vec![Vec::new(); x.size()]
                } else {
                    rows
                };
                Value::Kernel(self.lift(StochasticMap::from_rows(x, y, rows))?)
            }
            "complement" => {
                self.arity(1)?;
                Value::Fuzzy(self.fuzzy(0)?.complement())
            }
            "char" => {
                self.arity(1)?;
                Value::Kernel(stochastic::char_map(self.fuzzy(0)?))
            }
            "omega" => {
                self.arity(1)?;
                Value::Fuzzy(stochastic::omega(&self.set(0)?))
            }
            "compose" => {
                self.arity(2)?;
                Value::Kernel(self.lift(self.kernel(0)?.then(self.kernel(1)?))?)
            }
            "born" => {
                self.arity(2)?;
                let p = self.lift(stochastic::xi_state(self.dist(0)?).apply(self.fuzzy(1)?))?;
                Value::Number(p.value())
            }
            "substitute" => {
                self.arity(2)?;
                Value::Fuzzy(self.lift(stochastic::substitute(self.kernel(0)?, self.fuzzy(1)?))?)
            }
            "andthen" => {
                self.arity(2)?;
                Value::Fuzzy(self.lift(stochastic::test_andthen(self.fuzzy(0)?, self.fuzzy(1)?))?)
            }
            "then" => {
                self.arity(2)?;
                Value::Fuzzy(self.lift(stochastic::test_then(self.fuzzy(0)?, self.fuzzy(1)?))?)
            }
            "multiply" => {
                self.arity(2)?;
                match (&self.args[0], &self.args[1]) {
                    (Value::Number(_), _) => Value::Fuzzy(stochastic::probability_multiply(
                        self.probability(0)?,
                        self.fuzzy(1)?,
                    )),
                    _ => Value::Fuzzy(self.lift(self.fuzzy(0)?.multiply(self.fuzzy(1)?))?),
                }
            }
            "orthosum" => {
                self.arity(2)?;
                self.lift(stochastic::orthosum(self.fuzzy(0)?, self.fuzzy(1)?))?
                    .map_or(Value::Undefined, Value::Fuzzy)
            }
            "measure" => {
                self.arity(2)?;
                Value::Dist(self.lift(stochastic::measure_distribution(
                    self.fuzzy(0)?,
                    self.dist(1)?,
                ))?)
            }
            "comprehension" => {
                self.arity(1)?;
                Value::Set(stochastic::comprehension(self.fuzzy(0)?).carrier)
            }
            _ => return self.fail("not available in the stochastic instance"),
        };
        Ok(v)
    }

    fn quantum(&self) -> EResult<Value> {
        let v = match self.name {
            "pure" => {
                self.arity(1)?;
                Value::State(self.state(0)?)
            }
            "density" => {
                self.arity(1)?;
                match &self.args[0] {
                    Value::State(s) => Value::Density(s.density()),
                    Value::Matrix(m) if m.cols() == 1 => Value::Density(self.state(0)?.density()),
                    _ => Value::Density(self.lift(DensityMatrix::new(self.matrix(0)?))?),
                }
            }
            "mixed" => {
                self.arity(1)?;
                Value::Density(DensityMatrix::maximally_mixed(self.count(0)?))
            }
            "effect" => {
                self.arity(1)?;
                Value::Effect(self.effect(0)?)
            }
            "pred" => {
                self.arity(1)?;
                Value::Pred(self.pred(0)?)
            }
            "pair" => {
                self.arity(2)?;
                Value::Pred(self.lift(QPredicate::new(self.effect(0)?, self.effect(1)?))?)
            }
            "proj" => {
                self.arity(1)?;
                Value::Pred(QPredicate::projection(&self.state(0)?))
            }
            "truth" => {
                self.arity(1)?;
                Value::Pred(QPredicate::truth(self.count(0)?))
            }
            "falsum" => {
                self.arity(1)?;
                Value::Pred(QPredicate::falsum(self.count(0)?))
            }
            "isometry" => {
                self.arity(1)?;
                Value::Iso(self.isometry(0)?)
            }
            "identity" => {
                self.arity(1)?;
                Value::Matrix(ComplexMatrix::identity(self.count(0)?))
            }
            "outer" => {
                self.arity(1)?;
                Value::Matrix(ComplexMatrix::outer(self.state(0)?.vector()))
            }
            "adjoint" => {
                self.arity(1)?;
                Value::Matrix(self.matrix(0)?.adjoint())
            }
            "image" => {
                self.arity(1)?;
                Value::Pred(quantum::predicate_from_isometry(&self.isometry(0)?))
            }
            "complement" => {
                self.arity(1)?;
                Value::Pred(self.pred(0)?.complement())
            }
            "char" => {
                self.arity(1)?;
                Value::Iso(self.lift(quantum::char_sqrt(&self.pred(0)?))?)
            }
            "omega" => {
                self.arity(1)?;
                Value::Pred(quantum::omega_predicate(self.count(0)?))
            }
            "compose" => {
                self.arity(2)?;
                Value::Iso(self.lift(self.isometry(0)?.then(&self.isometry(1)?))?)
            }
            "born" => {
                self.arity(2)?;
                let p = self.pred(1)?;
                let prob = match &self.args[0] {
                    Value::Density(rho) => self.lift(quantum::xi_state(rho).apply(p.first()))?,
                    _ => self.lift(quantum::born_probability(&self.state(0)?, &p))?,
                };
                Value::Number(prob.value())
            }
            "substitute" => {
                self.arity(2)?;
                Value::Pred(self.lift(quantum::substitute(&self.isometry(0)?, &self.pred(1)?))?)
            }
            "andthen" => {
                self.arity(2)?;
                Value::Pred(self.lift(quantum::test_andthen_pred(&self.pred(0)?, &self.pred(1)?))?)
            }
            "then" => {
                self.arity(2)?;
                Value::Pred(self.lift(quantum::test_then_pred(&self.pred(0)?, &self.pred(1)?))?)
            }
            "multiply" => {
                self.arity(2)?;
                Value::Pred(quantum::probability_multiply(
                    self.probability(0)?,
                    &self.pred(1)?,
                ))
            }
            "orthosum" => {
                self.arity(2)?;
                self.lift(quantum::orthosum(&self.pred(0)?, &self.pred(1)?))?
                    .map_or(Value::Undefined, Value::Pred)
            }
            "measure" => {
                self.arity(2)?;
                let p = self.pred(0)?;
                match &self.args[1] {
                    Value::Density(rho) => {
                        Value::Density(self.lift(quantum::measure_density(&p, rho))?)
                    }
                    _ => Value::State(self.lift(quantum::measure_pure(&p, &self.state(1)?))?),
                }
            }
            "comprehension" => {
                self.arity(1)?;
                Value::Iso(self.lift(quantum::comprehension(&self.pred(0)?))?)
            }
            _ => return self.fail("not available in the quantum instance"),
        };
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env(instance: Instance) -> Env {
        Env {
            instance,
            names: HashMap::new(),
        }
    }

    fn call(name: &str, args: Vec<Expr>) -> Expr {
        Expr::Call {
            name: name.into(),
            args,
            pos: Pos { line: 1, col: 1 },
        }
    }

    fn num(value: f64) -> Expr {
        Expr::Number {
            value,
            pos: Pos { line: 1, col: 1 },
        }
    }

    #[test]
    fn classical_test_then_is_implication() {
        let e = env(Instance::Classical);
        let x = call("set", vec![num(3.0)]);
        let u = call("subset", vec![x.clone(), num(0.0), num(1.0)]);
        let v = call("subset", vec![x, num(1.0)]);
        let out = e.eval(&call("then", vec![u, v])).unwrap();
        assert_eq!(out.render(3), "{1,2}");
    }

    #[test]
    fn stochastic_kernel_rows_are_checked() {
        let e = env(Instance::Stochastic);
        let x = call("set", vec![num(1.0)]);
        let bad = call("kernel", vec![x.clone(), x.clone(), num(0.5)]);
        assert!(e.eval(&bad).is_err());
        let ok = call("kernel", vec![x.clone(), x, num(1.0)]);
        assert!(matches!(e.eval(&ok).unwrap(), Value::Kernel(_)));
    }

    #[test]
    fn quantum_constants_coerce_to_states() {
        let e = env(Instance::Quantum);
        let ket1 = Expr::Ident {
            name: "ket1".into(),
            pos: Pos { line: 1, col: 1 },
        };
        let p = call("proj", vec![ket1.clone()]);
        let out = e.eval(&call("born", vec![ket1, p])).unwrap();
        assert_eq!(out.render(9), "1.000000000");
    }

    #[test]
    fn type_errors_name_the_argument() {
        let e = env(Instance::Quantum);
        let out = e
            .eval(&call("proj", vec![call("mo", vec![num(1.0)])]))
            .unwrap_err();
        assert!(out.message.contains("argument 1"), "{}", out.message);
    }
}
