use crate::error::{Error, Result};
use crate::permgroup::BlockSystem;
use crate::{PermGroup, Permutation};

/// A maximal block system of a transitive imprimitive group, with the kernel
/// of the action on blocks and the induced primitive quotient.
#[derive(Debug, Clone)]
pub struct BlockDecomposition {
    /// Number of blocks.
    pub r: usize,
    pub system: BlockSystem,
    pub kernel: PermGroup,
    pub quotient: PermGroup,
}

#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
pub enum Decomposition {
    Primitive,
    Imprimitive(BlockDecomposition),
}

impl BlockDecomposition {
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        self.system.blocks()
    }

    /// The permutation of blocks induced by `h`.
    pub fn induced(&self, h: &Permutation) -> Permutation {
        induced_on_blocks(&self.system, h)
    }
}

fn induced_on_blocks(system: &BlockSystem, h: &Permutation) -> Permutation {
    let mut reps = vec![usize::MAX; system.block_count];
    for (i, &b) in system.block_of.iter().enumerate() {
        if reps[b] == usize::MAX {
            reps[b] = i;
        }
    }
    Permutation::from_images(reps.iter().map(|&p| system.block_of[h.image(p)]))
        .expect("blocks map to blocks")
}

/// Picks the block system with the fewest blocks (`r > 1`), breaking ties by
/// the lexicographically smallest block through point 0. Its quotient action is
/// primitive.
pub fn block_decomposition(h: &PermGroup) -> Result<Decomposition> {
    if !h.is_transitive() {
        return Err(Error::Invalid("block decomposition needs a transitive group".into()));
    }
    let Some(system) = h.block_systems().into_iter().next() else {
        return Ok(Decomposition::Primitive);
    };
    decompose_along(h, system).map(Decomposition::Imprimitive)
}

/// Kernel and quotient for a given block system.
pub fn decompose_along(h: &PermGroup, system: BlockSystem) -> Result<BlockDecomposition> {
    let kernel = h.subgroup_where(|x| induced_on_blocks(&system, x).is_identity());
    let quotient_gens: Vec<Permutation> = h.generators().iter().map(|g| induced_on_blocks(&system, g)).collect();
    let quotient = PermGroup::closure(quotient_gens, h.max_order())?;
    let r = system.block_count;
    debug_assert_eq!(h.order_usize()?, kernel.order_usize()? * quotient.order_usize()?);
    Ok(BlockDecomposition {
        r,
        system,
        kernel,
        quotient,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actions::family::build_family;
    use crate::Budgets;

    fn decompose(spec: &str) -> Decomposition {
        let g = build_family(spec, &Budgets::default()).unwrap();
        g.elements().unwrap();
        block_decomposition(&g).unwrap()
    }

    #[test]
    fn regular_c4() {
        let Decomposition::Imprimitive(d) = decompose("cyclic:4") else { panic!() };
        assert_eq!(d.r, 2);
        assert_eq!(d.blocks(), vec![vec![0, 2], vec![1, 3]]);
        assert_eq!(d.kernel.order_usize().unwrap(), 2);
        assert_eq!(d.quotient.order_usize().unwrap(), 2);
        assert!(d.quotient.is_transitive());
    }

    #[test]
    fn wreath_cyclic_three() {
        let Decomposition::Imprimitive(d) = decompose("wreath-cyclic:3") else { panic!() };
        assert_eq!(d.r, 3);
        assert_eq!(d.kernel.order_usize().unwrap(), 8);
        assert_eq!(d.quotient.order_usize().unwrap(), 3);
        assert!(d.quotient.is_primitive());
    }

    #[test]
    fn cyclic_six_prefers_fewest_blocks() {
        let Decomposition::Imprimitive(d) = decompose("cyclic:6") else { panic!() };
        assert_eq!(d.r, 2);
        assert_eq!(d.kernel.order_usize().unwrap(), 3);
    }

    #[test]
    fn primitive_and_intransitive() {
        assert!(matches!(decompose("symmetric:3"), Decomposition::Primitive));
        let g = build_family("gens:[3](1 2)", &Budgets::default()).unwrap();
        assert!(block_decomposition(&g).is_err());
    }
}
