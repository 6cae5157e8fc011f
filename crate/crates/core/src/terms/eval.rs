//! Term evaluation over Cayley tables.
//!
//! Terms are compiled against an ordered variable list into a [`Program`]
//! that reads a dense assignment (one element per variable, in list
//! order). Products fold strictly left to right.

use std::collections::BTreeMap;

use super::{SemiringTerm, Term, VariableId};
use crate::algebra::FiniteSemigroup;
use crate::error::{Error, Result};
use crate::order::AiSemiring;

/// Borrowed view of the tables an evaluation may touch.
#[derive(Debug, Clone, Copy)]
pub struct Tables<'a> {
    pub size: usize,
    pub mul: &'a [usize],
    pub inv: Option<&'a [usize]>,
    pub add: Option<&'a [usize]>,
}

impl<'a> From<&'a FiniteSemigroup> for Tables<'a> {
    fn from(s: &'a FiniteSemigroup) -> Self {
        Tables {
            size: s.size(),
            mul: s.table(),
            inv: s.inverse_table(),
            add: None,
        }
    }
}

impl<'a> From<&'a AiSemiring> for Tables<'a> {
    fn from(a: &'a AiSemiring) -> Self {
        Tables {
            size: a.size(),
            mul: a.mul_table(),
            inv: None,
            add: Some(a.add_table()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Push(u32),
    Mul,
    Add,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Program {
    /// Signed slots multiplied left to right.
    Product(Vec<(u32, bool)>),
    /// Postfix code for a semiring term.
    Postfix(Vec<Op>),
}

fn slot_of(vars: &[VariableId], v: &VariableId) -> Result<u32> {
    vars.binary_search(v)
        .map(|i| i as u32)
        .map_err(|_| Error::UnboundVariable(v.to_string()))
}

fn emit(t: &SemiringTerm, vars: &[VariableId], out: &mut Vec<Op>) -> Result<()> {
    match t {
        SemiringTerm::Var(v) => out.push(Op::Push(slot_of(vars, v)?)),
        SemiringTerm::Plus(a, b) => {
            emit(a, vars, out)?;
            emit(b, vars, out)?;
            out.push(Op::Add);
        }
        SemiringTerm::Times(a, b) => {
            emit(a, vars, out)?;
            emit(b, vars, out)?;
            out.push(Op::Mul);
        }
    }
    Ok(())
}

/// Compiles against `vars`, which must be sorted and duplicate-free.
pub fn compile(term: &Term, vars: &[VariableId]) -> Result<Program> {
    debug_assert!(vars.windows(2).all(|w| w[0] < w[1]));
    Ok(match term {
        Term::Word(w) => Program::Product(
            w.letters()
                .iter()
                .map(|v| Ok((slot_of(vars, v)?, false)))
                .collect::<Result<_>>()?,
        ),
        Term::Unary(u) => Program::Product(
            u.letters()
                .iter()
                .map(|l| Ok((slot_of(vars, &l.var)?, l.inverse)))
                .collect::<Result<_>>()?,
        ),
        Term::Semiring(s) => {
            let mut ops = Vec::new();
            emit(s, vars, &mut ops)?;
            Program::Postfix(ops)
        }
    })
}

impl Program {
    pub fn needs_inverse(&self) -> bool {
        matches!(self, Program::Product(p) if p.iter().any(|&(_, inv)| inv))
    }

    pub fn needs_addition(&self) -> bool {
        matches!(self, Program::Postfix(ops) if ops.contains(&Op::Add))
    }

    /// Fails when the program uses a table the algebra lacks.
    pub fn check_tables(&self, t: &Tables) -> Result<()> {
        if self.needs_inverse() && t.inv.is_none() {
            return Err(Error::MissingInverses);
        }
        if self.needs_addition() && t.add.is_none() {
            return Err(Error::FlavorMismatch("+ needs a semiring".into()));
        }
        Ok(())
    }

    /// Evaluates under `assignment`; tables must satisfy [`Self::check_tables`].
    #[inline]
    pub fn eval(&self, t: &Tables, assignment: &[usize]) -> usize {
        let n = t.size;
        match self {
            Program::Product(letters) => {
                let val = |&(slot, inv): &(u32, bool)| {
                    let a = assignment[slot as usize];
                    if inv {
                        t.inv.expect("checked")[a]
                    } else {
                        a
                    }
                };
                let mut it = letters.iter();
                let mut acc = val(it.next().expect("nonempty"));
                for l in it {
                    acc = t.mul[acc * n + val(l)];
                }
                acc
            }
            Program::Postfix(ops) => {
                let mut stack: Vec<usize> = Vec::with_capacity(8);
                for op in ops {
                    match *op {
                        Op::Push(s) => stack.push(assignment[s as usize]),
                        Op::Mul | Op::Add => {
                            let b = stack.pop().expect("well formed");
                            let a = stack.pop().expect("well formed");
                            let table = if *op == Op::Mul {
                                t.mul
                            } else {
                                t.add.expect("checked")
                            };
                            stack.push(table[a * n + b]);
                        }
                    }
                }
                stack.pop().expect("well formed")
            }
        }
    }
}

/// Value of `term` under `tau`.
pub fn evaluate<'a>(
    term: &Term,
    alg: impl Into<Tables<'a>>,
    tau: &BTreeMap<VariableId, usize>,
) -> Result<usize> {
    let t = alg.into();
    let vars: Vec<VariableId> = term.variables().into_iter().collect();
    let program = compile(term, &vars)?;
    program.check_tables(&t)?;
    let mut assignment = Vec::with_capacity(vars.len());
    for v in &vars {
        let a = *tau
            .get(v)
            .ok_or_else(|| Error::UnboundVariable(v.to_string()))?;
        if a >= t.size {
            return Err(Error::IndexInvalid(a));
        }
        assignment.push(a);
    }
    Ok(program.eval(&t, &assignment))
}
