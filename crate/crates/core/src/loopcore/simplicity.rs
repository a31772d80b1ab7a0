use super::LoopTable;
use crate::permkernel::PermGroup;

impl LoopTable {
    /// Simplicity read off the multiplication group: simple iff `Mlt` is
    /// primitive.
    pub fn is_simple_by_primitivity(&self) -> bool {
        self.order() >= 2 && self.mult_groups().1.is_primitive()
    }

    /// Simplicity by closure: every `x != 1` must generate the whole loop as
    /// a normal subloop.
    pub fn is_simple_by_normal_closure(&self) -> bool {
        if self.order() < 2 {
            return false;
        }
        let inner = PermGroup::generated_by(self.order(), &self.inner_generators().distinct());
        (1..self.order()).all(|x| self.normal_closure_with(&inner, x).len() == self.order())
    }

    /// The smallest normal subloop containing `x`, as a sorted element list.
    pub fn normal_closure(&self, x: usize) -> Vec<usize> {
        let inner = PermGroup::generated_by(self.order(), &self.inner_generators().distinct());
        self.normal_closure_with(&inner, x)
    }

    fn normal_closure_with(&self, inner: &PermGroup, x: usize) -> Vec<usize> {
        let d = self.order();
        let mut member = vec![false; d];
        let mut list = Vec::with_capacity(d);
        let push = |y: usize, member: &mut Vec<bool>, list: &mut Vec<usize>| {
            if !member[y] {
                member[y] = true;
                list.push(y);
            }
        };
        push(0, &mut member, &mut list);
        push(x, &mut member, &mut list);
        let mut next = 0;
        while next < list.len() {
            let a = list[next];
            next += 1;
            for h in inner.generators() {
                push(h.image(a), &mut member, &mut list);
            }
            // combine `a` with every member found so far, including itself
            let mut k = 0;
            while k < next {
                let b = list[k];
                k += 1;
                for y in [
                    self.mul(a, b),
                    self.mul(b, a),
                    self.left_div(a, b),
                    self.left_div(b, a),
                    self.right_div(a, b),
                    self.right_div(b, a),
                ] {
                    push(y, &mut member, &mut list);
                }
            }
        }
        list.sort_unstable();
        list
    }
}
