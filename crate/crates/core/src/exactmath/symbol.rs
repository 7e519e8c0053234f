use alloc::string::String;
use core::fmt;

/// Polynomial indeterminates. The derived order fixes the canonical variable
/// order `b < c < g < d1 < d2 < ...`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    /// cone-angle parameter beta
    Beta,
    /// deformation parameter of the test configuration
    C,
    /// the fixed constant gamma of the Maeda and flop pipelines
    Gamma,
    /// per-point weight delta_i (1-based)
    Delta(u32),
}

impl Symbol {
    pub fn name(&self) -> String {
        match self {
            Symbol::Beta => String::from("b"),
            Symbol::C => String::from("c"),
            Symbol::Gamma => String::from("g"),
            Symbol::Delta(i) => alloc::format!("d{i}"),
        }
    }

    /// Accepts the ASCII names plus the Greek letters.
    pub fn parse(s: &str) -> Option<Symbol> {
        match s {
            "b" | "β" => Some(Symbol::Beta),
            "c" => Some(Symbol::C),
            "g" | "γ" => Some(Symbol::Gamma),
            _ => {
                let rest = s.strip_prefix('d').or_else(|| s.strip_prefix('δ'))?;
                let i: u32 = rest.parse().ok()?;
                (i >= 1 && !rest.starts_with('0')).then_some(Symbol::Delta(i))
            }
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Beta => f.write_str("b"),
            Symbol::C => f.write_str("c"),
            Symbol::Gamma => f.write_str("g"),
            Symbol::Delta(i) => write!(f, "d{i}"),
        }
    }
}
