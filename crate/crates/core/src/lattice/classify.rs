use alloc::format;
use alloc::string::String;
use core::fmt;

use super::{IntegralLattice, Parity};
use crate::error::{Error, Result};

/// Normal form of an indefinite unimodular lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Decomposition {
    /// `positive⟨1⟩ ⊕ negative⟨−1⟩`.
    Odd { positive: usize, negative: usize },
    /// `e8·E8(sign) ⊕ hyperbolic·H`.
    Even { e8: usize, e8_positive: bool, hyperbolic: usize },
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn count(n: usize) -> String {
            if n == 1 {
                String::new()
            } else {
                format!("{n}")
            }
        }
        match *self {
            Decomposition::Odd { positive, negative } => {
                let mut parts = alloc::vec::Vec::new();
                if positive > 0 {
                    parts.push(format!("{}⟨1⟩", count(positive)));
                }
                if negative > 0 {
                    parts.push(format!("{}⟨−1⟩", count(negative)));
                }
                write!(f, "{}", parts.join(" ⊕ "))
            }
            Decomposition::Even { e8, e8_positive, hyperbolic } => {
                let mut parts = alloc::vec::Vec::new();
                if e8 > 0 {
                    let sign = if e8_positive { "+1" } else { "−1" };
                    let prefix = if e8 == 1 { String::new() } else { format!("{e8}·") };
                    parts.push(format!("{prefix}E8({sign})"));
                }
                if hyperbolic > 0 {
                    let prefix = if hyperbolic == 1 { String::new() } else { format!("{hyperbolic}·") };
                    parts.push(format!("{prefix}H"));
                }
                write!(f, "{}", parts.join(" ⊕ "))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormDescriptor {
    pub parity: Parity,
    pub rank: usize,
    pub signature: i64,
    pub decomposition: Decomposition,
}

impl fmt::Display for FormDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.decomposition)
    }
}

pub(super) fn classify(l: &IntegralLattice) -> Result<FormDescriptor> {
    let inertia = l.signature();
    if inertia.b_zero > 0 || inertia.b_plus == 0 || inertia.b_minus == 0 || !l.is_unimodular() {
        return Err(Error::Unclassified {
            b_plus: inertia.b_plus,
            b_minus: inertia.b_minus,
            b_zero: inertia.b_zero,
        });
    }
    let parity = l.parity();
    let signature = inertia.signature();
    let rank = l.rank();
    let decomposition = match parity {
        Parity::Odd => Decomposition::Odd { positive: inertia.b_plus, negative: inertia.b_minus },
        Parity::Even => {
            let e8 = (signature.unsigned_abs() / 8) as usize;
            if signature % 8 != 0 {
                return Err(Error::Invariant(format!("even unimodular form with signature {signature} ≢ 0 mod 8")));
            }
            Decomposition::Even { e8, e8_positive: signature > 0, hyperbolic: (rank - 8 * e8) / 2 }
        }
    };
    Ok(FormDescriptor { parity, rank, signature, decomposition })
}
