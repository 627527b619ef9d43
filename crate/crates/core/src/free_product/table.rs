use super::FpError;

/// A finite group given by its Cayley table. Elements are indices into
/// `elements`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableGroup {
    name: String,
    elements: Vec<String>,
    mul: Vec<Vec<u32>>,
    inv: Vec<u32>,
    identity: u32,
}

impl TableGroup {
    /// Validates the table: square Latin square, two-sided identity,
    /// inverses consistent with `inv`, associativity.
    pub fn new(
        name: impl Into<String>,
        elements: Vec<String>,
        mul: Vec<Vec<u32>>,
        inv: Vec<u32>,
        identity: u32,
    ) -> Result<Self, FpError> {
        let name = name.into();
        let bad = |msg: String| FpError::InvalidTable(format!("{name}: {msg}"));
        let n = elements.len();
        if n == 0 {
            return Err(bad("no elements".into()));
        }
        if name.is_empty() || name.contains(|c: char| c.is_whitespace() || "*^.".contains(c)) {
            return Err(bad("group name must be nonempty without whitespace, '*', '^' or '.'".into()));
        }
        let mut sorted = elements.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != n {
            return Err(bad("duplicate element names".into()));
        }
        if elements
            .iter()
            .any(|e| e.is_empty() || e.contains(|c: char| c.is_whitespace() || "*^".contains(c)))
        {
            return Err(bad("element names must be nonempty without whitespace, '*' or '^'".into()));
        }
        if mul.len() != n || mul.iter().any(|row| row.len() != n) {
            return Err(bad(format!("mul must be {n}x{n}")));
        }
        if inv.len() != n {
            return Err(bad(format!("inv must have {n} entries")));
        }
        let id = identity as usize;
        if id >= n {
            return Err(bad("identity out of range".into()));
        }
        for a in 0..n {
            let mut row_seen = vec![false; n];
            let mut col_seen = vec![false; n];
            for b in 0..n {
                let r = mul[a][b] as usize;
                let c = mul[b][a] as usize;
                if r >= n || c >= n {
                    return Err(bad("mul entry out of range".into()));
                }
                if std::mem::replace(&mut row_seen[r], true) || std::mem::replace(&mut col_seen[c], true) {
                    return Err(bad("mul is not a Latin square".into()));
                }
            }
            if mul[id][a] as usize != a || mul[a][id] as usize != a {
                return Err(bad(format!("{} is not a two-sided identity", elements[id])));
            }
            let ai = inv[a] as usize;
            if ai >= n || mul[a][ai] != identity || mul[ai][a] != identity {
                return Err(bad(format!("inv is wrong for {}", elements[a])));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = mul[a][b] as usize;
                for c in 0..n {
                    if mul[ab][c] != mul[a][mul[b][c] as usize] {
                        return Err(bad("mul is not associative".into()));
                    }
                }
            }
        }
        Ok(Self {
            name,
            elements,
            mul,
            inv,
            identity,
        })
    }

    /// `Z<n>` with elements `0..n` under addition mod n.
    pub fn cyclic(n: u32) -> Self {
        assert!(n >= 1);
        let elements = (0..n).map(|i| i.to_string()).collect();
        let mul = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        let inv = (0..n).map(|a| (n - a) % n).collect();
        Self::new(format!("Z{n}"), elements, mul, inv, 0).expect("cyclic table is a group")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    pub fn multiply(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize][b as usize]
    }

    pub fn invert(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    pub fn element_name(&self, a: u32) -> &str {
        &self.elements[a as usize]
    }

    /// Matches `<name>.<element>`.
    pub fn parse_token(&self, token: &str) -> Option<u32> {
        let rest = token.strip_prefix(self.name.as_str())?.strip_prefix('.')?;
        self.elements.iter().position(|e| e == rest).map(|i| i as u32)
    }

    pub fn format(&self, a: u32) -> String {
        format!("{}.{}", self.name, self.elements[a as usize])
    }

    pub fn mul_table(&self) -> &[Vec<u32>] {
        &self.mul
    }

    pub fn inv_table(&self) -> &[u32] {
        &self.inv
    }

    pub fn element_names(&self) -> &[String] {
        &self.elements
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_tables() {
        let z3 = TableGroup::cyclic(3);
        assert_eq!(z3.multiply(1, 2), 0);
        assert_eq!(z3.invert(1), 2);
        assert_eq!(z3.parse_token("Z3.2"), Some(2));
        assert_eq!(z3.parse_token("Z3.3"), None);
        assert_eq!(z3.parse_token("Z2.1"), None);
        assert_eq!(z3.format(1), "Z3.1");
    }

    #[test]
    fn rejects_broken_tables() {
        let names = || vec!["0".to_string(), "1".to_string()];
        assert!(TableGroup::new("G", names(), vec![vec![0, 1], vec![1, 1]], vec![0, 1], 0).is_err());
        assert!(TableGroup::new("G", names(), vec![vec![0, 1], vec![1, 0]], vec![0, 0], 0).is_err());
        assert!(TableGroup::new("G", names(), vec![vec![1, 0], vec![0, 1]], vec![0, 1], 0).is_err());
        assert!(TableGroup::new("G", names(), vec![vec![0, 1]], vec![0, 1], 0).is_err());
        assert!(TableGroup::new("G.H", names(), vec![vec![0, 1], vec![1, 0]], vec![0, 1], 0).is_err());
        assert!(TableGroup::new("G", names(), vec![vec![0, 1], vec![1, 0]], vec![0, 1], 0).is_ok());
    }

    #[test]
    fn rejects_nonassociative_latin_square() {
        // A loop of order 5 that is not a group.
        let mul = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let names = (0..5).map(|i| i.to_string()).collect();
        let err = TableGroup::new("L", names, mul, vec![0, 1, 2, 3, 4], 0).unwrap_err();
        assert!(err.to_string().contains("associative"), "{err}");
    }
}
