//! Systems of distinct representatives over y-masks (augmenting paths).

use crate::vertex::BitIter;

const FREE: u8 = u8::MAX;

/// A matching of slots to distinct y-vertices, grown and shrunk one slot at a
/// time. Every pushed slot is matched.
#[derive(Clone, Debug)]
pub(crate) struct SlotMatcher {
    candidates: Vec<u64>,
    y_of_slot: Vec<u8>,
    slot_of_y: [u8; 64],
}

impl SlotMatcher {
    pub fn new() -> Self {
        SlotMatcher {
            candidates: Vec::new(),
            y_of_slot: Vec::new(),
            slot_of_y: [FREE; 64],
        }
    }

    #[cfg(test)]
    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    /// Adds a slot; returns false (leaving the matcher unchanged) when no
    /// perfect matching including it exists.
    pub fn push(&mut self, candidates: u64) -> bool {
        let s = self.candidates.len();
        self.candidates.push(candidates);
        self.y_of_slot.push(FREE);
        let mut visited = 0u64;
        if self.augment(s, &mut visited) {
            true
        } else {
            self.candidates.pop();
            self.y_of_slot.pop();
            false
        }
    }

    pub fn pop(&mut self) {
        if let Some(y) = self.y_of_slot.pop() {
            self.candidates.pop();
            if y != FREE {
                self.slot_of_y[y as usize] = FREE;
            }
        }
    }

    fn augment(&mut self, s: usize, visited: &mut u64) -> bool {
        let avail = self.candidates[s] & !*visited;
        for y in BitIter(avail) {
            *visited |= 1 << y;
            let owner = self.slot_of_y[y];
            if owner == FREE || self.augment(owner as usize, visited) {
                self.slot_of_y[y] = s as u8;
                self.y_of_slot[s] = y as u8;
                return true;
            }
        }
        false
    }
}

/// Whether every slot can get a distinct y from its candidate mask.
pub(crate) fn has_sdr(candidates: &[u64]) -> bool {
    let mut m = SlotMatcher::new();
    candidates.iter().all(|&c| m.push(c))
}

/// The lexicographically least system of distinct representatives: slot 0
/// takes the smallest y that still admits a completion, then slot 1, ...
pub(crate) fn least_sdr(candidates: &[u64]) -> Option<Vec<usize>> {
    if !has_sdr(candidates) {
        return None;
    }
    let mut used = 0u64;
    let mut out = Vec::with_capacity(candidates.len());
    for i in 0..candidates.len() {
        let rest = &candidates[i + 1..];
        let pick = BitIter(candidates[i] & !used).find(|&y| {
            let taken = used | 1 << y;
            let masked: Vec<u64> = rest.iter().map(|c| c & !taken).collect();
            has_sdr(&masked)
        })?;
        used |= 1 << pick;
        out.push(pick);
    }
    Some(out)
}
