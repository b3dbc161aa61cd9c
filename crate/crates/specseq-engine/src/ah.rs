use std::collections::BTreeMap;

use fp_linalg::{rank, FpMatrix};

use crate::EngineError;

/// A graded F_p-module with a degree-lowering operator: the input of
/// the two-line first-differential computation. `ops[n]` is the matrix
/// of the operator H_n -> H_(n-2p+2); missing entries mean zero.
#[derive(Clone, Debug)]
pub struct OperatorModule {
    pub p: u64,
    pub dims: BTreeMap<i64, usize>,
    pub ops: BTreeMap<i64, FpMatrix>,
}

impl OperatorModule {
    pub fn dim(&self, n: i64) -> usize {
        *self.dims.get(&n).unwrap_or(&0)
    }

    fn op_rank(&self, n: i64) -> usize {
        self.ops.get(&n).map_or(0, rank)
    }
}

/// Graded dimensions of the abutment of a two-line first-quadrant page
/// whose only differential in the valid range sends the zero line to
/// the (2p-3)-line through the given operator: row 0 contributes the
/// operator kernel, row 2p-3 the operator cokernel.
///
/// Valid for cutoff < 2p^2 - 2p - 3.
pub fn two_line_ah(
    module: &OperatorModule,
    cutoff: i64,
) -> Result<BTreeMap<i64, usize>, EngineError> {
    let p = module.p as i64;
    if cutoff >= 2 * p * p - 2 * p - 3 {
        return Err(EngineError::CutoffTooLarge {
            cutoff,
            max: 2 * p * p - 2 * p - 3,
        });
    }
    // shape validation
    for (&n, m) in &module.ops {
        if m.cols() != module.dim(n) || m.rows() != module.dim(n - 2 * p + 2) {
            return Err(EngineError::BadPage(format!(
                "operator at degree {n} has shape {}x{}, module dims are {} -> {}",
                m.rows(),
                m.cols(),
                module.dim(n),
                module.dim(n - 2 * p + 2)
            )));
        }
    }
    let mut out = BTreeMap::new();
    for n in 0..=cutoff {
        let kernel = module.dim(n) - module.op_rank(n);
        let coker = module.dim(n - 2 * p + 3) - module.op_rank(n + 1);
        out.insert(n, kernel + coker);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_module_gives_unit_and_one_shifted_class() {
        // one class in degree zero with zero operator: dimensions 1 at
        // degree 0 and at degree 2p-3
        let module = OperatorModule {
            p: 5,
            dims: [(0, 1)].into(),
            ops: BTreeMap::new(),
        };
        let dims = two_line_ah(&module, 16).unwrap();
        for n in 0..=16 {
            let expect = usize::from(n == 0 || n == 7);
            assert_eq!(dims[&n], expect, "degree {n}");
        }
    }

    #[test]
    fn cutoff_guard() {
        let module = OperatorModule {
            p: 5,
            dims: BTreeMap::new(),
            ops: BTreeMap::new(),
        };
        assert!(matches!(
            two_line_ah(&module, 37),
            Err(EngineError::CutoffTooLarge { .. })
        ));
        assert!(two_line_ah(&module, 36).is_ok());
    }
}
