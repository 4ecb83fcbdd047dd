use std::fmt;

/// The three families of variables that appear in tautological classes.
///
/// The derived order (framing < chern < hbar) is the primary key of the
/// symbol order used for canonical printing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SymbolKind {
    /// Equivariant parameter `a(i,k)` of the framing torus.
    Framing,
    /// Chern root `s(i,j)` of the tautological bundle at vertex `i`.
    Chern,
    /// The weight `h` of the symplectic form.
    Hbar,
}

/// A variable of the polynomial ring.
///
/// Vertices and indices are 1-based. `h` carries vertex and index 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol {
    pub kind: SymbolKind,
    pub vertex: u16,
    pub index: u16,
}

impl Symbol {
    pub const H: Symbol = Symbol {
        kind: SymbolKind::Hbar,
        vertex: 0,
        index: 0,
    };

    pub fn a(vertex: usize, index: usize) -> Symbol {
        Symbol::indexed(SymbolKind::Framing, vertex, index)
    }

    pub fn s(vertex: usize, index: usize) -> Symbol {
        Symbol::indexed(SymbolKind::Chern, vertex, index)
    }

    fn indexed(kind: SymbolKind, vertex: usize, index: usize) -> Symbol {
        assert!(vertex >= 1 && index >= 1, "symbol indices are 1-based");
        Symbol {
            kind,
            vertex: u16::try_from(vertex).expect("vertex id out of range"),
            index: u16::try_from(index).expect("symbol index out of range"),
        }
    }

    pub fn is_framing(&self) -> bool {
        self.kind == SymbolKind::Framing
    }

    pub fn is_chern(&self) -> bool {
        self.kind == SymbolKind::Chern
    }

    pub fn is_hbar(&self) -> bool {
        self.kind == SymbolKind::Hbar
    }

    /// Same symbol with the index replaced.
    pub fn with_index(&self, index: usize) -> Symbol {
        Symbol::indexed(self.kind, self.vertex as usize, index)
    }

    pub fn vertex(&self) -> usize {
        self.vertex as usize
    }

    pub fn index(&self) -> usize {
        self.index as usize
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SymbolKind::Framing => write!(f, "a({},{})", self.vertex, self.index),
            SymbolKind::Chern => write!(f, "s({},{})", self.vertex, self.index),
            SymbolKind::Hbar => f.write_str("h"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_kind_then_vertex_then_index() {
        let mut syms = vec![
            Symbol::H,
            Symbol::s(1, 2),
            Symbol::a(2, 1),
            Symbol::s(1, 1),
            Symbol::a(1, 3),
        ];
        syms.sort();
        let printed: Vec<String> = syms.iter().map(|s| s.to_string()).collect();
        assert_eq!(printed, ["a(1,3)", "a(2,1)", "s(1,1)", "s(1,2)", "h"]);
    }
}
