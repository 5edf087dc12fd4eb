use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::string::ToString;

use super::{LaurentError, LaurentPoly};

#[derive(Debug, Clone)]
struct Image {
    value: LaurentPoly,
    inverse: Option<LaurentPoly>,
}

/// A ring homomorphism given by images of selected variables.
///
/// Variables without an image map to themselves. A variable occurring with
/// a negative exponent needs an inverse image: either its image is a unit,
/// or one was declared with [`Substitution::map_with_inverse`].
#[derive(Debug, Clone, Default)]
pub struct Substitution {
    images: BTreeMap<usize, Image>,
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn map(mut self, var: usize, value: LaurentPoly) -> Self {
        self.images.insert(var, Image { value, inverse: None });
        self
    }

    pub fn map_with_inverse(mut self, var: usize, value: LaurentPoly, inverse: LaurentPoly) -> Self {
        self.images.insert(
            var,
            Image {
                value,
                inverse: Some(inverse),
            },
        );
        self
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub(super) fn apply(&self, p: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        let table = p.table();
        for (&var, img) in &self.images {
            if var >= table.len() {
                return Err(LaurentError::UnknownIndex(var));
            }
            img.value.same_table(p)?;
            if let Some(inv) = &img.inverse {
                inv.same_table(p)?;
                if !(&img.value * inv).is_one() {
                    return Err(LaurentError::BadInverse(table.names[var].to_string()));
                }
            }
        }
        if self.images.is_empty() {
            return Ok(p.clone());
        }

        let mut powers: BTreeMap<(usize, i32), LaurentPoly> = BTreeMap::new();
        let mut out = LaurentPoly::zero(table);
        for (m, c) in p.terms() {
            let mut untouched = m.0.clone();
            let mut term = LaurentPoly::one(table);
            for (&var, img) in &self.images {
                let e = m.0[var];
                if e == 0 {
                    continue;
                }
                untouched[var] = 0;
                let power = match powers.entry((var, e)) {
                    Entry::Occupied(o) => o.into_mut(),
                    Entry::Vacant(slot) => {
                        let base = if e > 0 {
                            img.value.clone()
                        } else if let Some(inv) = &img.inverse {
                            inv.clone()
                        } else {
                            img.value
                                .unit_inverse()
                                .ok_or_else(|| LaurentError::NonUnitInverse(table.names[var].to_string()))?
                        };
                        slot.insert(base.pow(e.unsigned_abs()))
                    }
                };
                term = &term * &*power;
            }
            let rest = LaurentPoly::monomial(table, untouched, c.clone())?;
            out = &out + &(&term * &rest);
        }
        Ok(out)
    }
}
