/// Caps for every exhaustive search in the crate, gathered in one record so
/// callers can loosen or tighten them together.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest group accepted by `Group` construction.
    pub group_order: usize,
    /// Largest module order for brute-force map counting.
    pub module_order: usize,
    /// Largest acting group for brute-force map counting.
    pub acting_group_order: usize,
    /// Largest module order for `bruteforce_module_structures`.
    pub structure_module_order: usize,
    /// Largest `|Aut(A)|` of the underlying abelian group scanned by
    /// `bruteforce_module_structures`.
    pub structure_aut_order: usize,
    /// Largest total group accepted by class-triple automorphism searches.
    pub triple_group_order: usize,
    /// Largest number of search leaves for direct automorphism enumeration.
    pub search_leaves: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            group_order: 200,
            module_order: 243,
            acting_group_order: 24,
            structure_module_order: 81,
            structure_aut_order: 20_000,
            triple_group_order: 1000,
            search_leaves: 5_000_000,
        }
    }
}
