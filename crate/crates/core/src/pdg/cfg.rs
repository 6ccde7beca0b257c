//! Control-flow graph over lowered atoms.

use super::lower::{Atom, JumpKind, Stmt};

pub const ENTRY: usize = 0;
pub const EXIT: usize = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Seq,
    True,
    False,
    Case(usize),
    Default,
    Jump,
    /// Added so every node is reachable from entry and reaches exit.
    Synthetic,
}

/// A CFG with `ENTRY` and `EXIT` as nodes 0 and 1; nodes from 2 on are atoms.
#[derive(Debug, Clone, Default)]
pub struct Cfg {
    pub succ: Vec<Vec<(usize, Branch)>>,
}

impl Cfg {
    /// Builds a CFG from raw edges over `n` nodes (`n >= 2`).
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Cfg {
        let mut succ = vec![Vec::new(); n.max(2)];
        for &(a, b) in edges {
            if !succ[a].iter().any(|&(s, _)| s == b) {
                succ[a].push((b, Branch::Seq));
            }
        }
        Cfg { succ }
    }

    pub fn len(&self) -> usize {
        self.succ.len()
    }

    pub fn is_empty(&self) -> bool {
        self.succ.is_empty()
    }

    pub fn preds(&self) -> Vec<Vec<usize>> {
        let mut preds = vec![Vec::new(); self.len()];
        for (a, out) in self.succ.iter().enumerate() {
            for &(b, _) in out {
                if !preds[b].contains(&a) {
                    preds[b].push(a);
                }
            }
        }
        preds
    }

    fn add_edge(&mut self, a: usize, b: usize, branch: Branch) {
        if !self.succ[a].iter().any(|&(s, br)| s == b && br == branch) {
            self.succ[a].push((b, branch));
        }
    }

    fn reachable_from(&self, start: usize) -> Vec<bool> {
        let mut seen = vec![false; self.len()];
        let mut stack = vec![start];
        while let Some(n) = stack.pop() {
            if std::mem::replace(&mut seen[n], true) {
                continue;
            }
            stack.extend(self.succ[n].iter().map(|&(s, _)| s));
        }
        seen
    }

    fn reaches(&self, target: usize) -> Vec<bool> {
        let preds = self.preds();
        let mut seen = vec![false; self.len()];
        let mut stack = vec![target];
        while let Some(n) = stack.pop() {
            if std::mem::replace(&mut seen[n], true) {
                continue;
            }
            stack.extend(preds[n].iter().copied());
        }
        seen
    }

    /// Unreachable code hangs off entry; nodes stuck in a cycle with no way
    /// out get an edge to exit. Lowest ids are fixed first.
    pub(crate) fn close(&mut self) {
        loop {
            let seen = self.reachable_from(ENTRY);
            match (2..self.len()).find(|&n| !seen[n]) {
                Some(n) => self.add_edge(ENTRY, n, Branch::Synthetic),
                None => break,
            }
        }
        loop {
            let ok = self.reaches(EXIT);
            match (0..self.len()).rev().find(|&n| !ok[n]) {
                Some(n) => self.add_edge(n, EXIT, Branch::Synthetic),
                None => break,
            }
        }
    }
}

type Pending = Vec<(usize, Branch)>;

struct Frame {
    label: Option<String>,
    is_loop: bool,
    breaks: Pending,
    continues: Pending,
}

struct Builder {
    cfg: Cfg,
    atoms: Vec<Atom>,
    frames: Vec<Frame>,
}

/// CFG plus the atom behind each node (`atoms[i]` is node `i + 2`).
pub(crate) struct BuiltCfg {
    pub cfg: Cfg,
    pub atoms: Vec<Atom>,
}

pub(crate) fn build_cfg(body: &[Stmt]) -> BuiltCfg {
    let mut b = Builder {
        cfg: Cfg {
            succ: vec![Vec::new(), Vec::new()],
        },
        atoms: Vec::new(),
        frames: Vec::new(),
    };
    let out = b.seq(body, vec![(ENTRY, Branch::Seq)]);
    b.connect(&out, EXIT);
    b.cfg.close();
    BuiltCfg {
        cfg: b.cfg,
        atoms: b.atoms,
    }
}

impl Builder {
    fn next_id(&self) -> usize {
        self.cfg.len()
    }

    fn connect(&mut self, pending: &Pending, target: usize) {
        for &(a, br) in pending {
            self.cfg.add_edge(a, target, br);
        }
    }

    fn node(&mut self, atom: &Atom, pending: &Pending) -> usize {
        let id = self.next_id();
        self.cfg.succ.push(Vec::new());
        self.atoms.push(atom.clone());
        self.connect(pending, id);
        id
    }

    /// Chains atoms; returns the last node id (if any) and the new pending.
    fn chain(&mut self, atoms: &[Atom], mut pending: Pending) -> (Option<usize>, Pending) {
        let mut last = None;
        for a in atoms {
            let id = self.node(a, &pending);
            pending = vec![(id, Branch::Seq)];
            last = Some(id);
        }
        (last, pending)
    }

    fn seq(&mut self, stmts: &[Stmt], mut pending: Pending) -> Pending {
        for s in stmts {
            pending = self.stmt(s, pending);
        }
        pending
    }

    fn frame_for(&mut self, label: &Option<String>, want_loop: bool) -> Option<&mut Frame> {
        self.frames.iter_mut().rev().find(|f| match label {
            Some(l) => f.label.as_ref() == Some(l),
            None => f.is_loop || !want_loop,
        })
    }

    fn stmt(&mut self, s: &Stmt, pending: Pending) -> Pending {
        match s {
            Stmt::Atoms(atoms) => self.chain(atoms, pending).1,
            Stmt::If { head, then, els } => {
                let (pred, pending) = self.chain(head, pending);
                let Some(pred) = pred else { return pending };
                let mut out = self.seq(then, vec![(pred, Branch::True)]);
                out.extend(self.seq(els, vec![(pred, Branch::False)]));
                out
            }
            Stmt::Loop {
                head,
                body,
                update,
                orelse,
                post_test,
                label,
            } => {
                self.frames.push(Frame {
                    label: label.clone(),
                    is_loop: true,
                    breaks: Vec::new(),
                    continues: Vec::new(),
                });
                let start = self.next_id();
                let exit_edge;
                if *post_test {
                    let mut after_body = self.seq(body, pending);
                    after_body.extend(std::mem::take(&mut self.frames.last_mut().unwrap().continues));
                    let (pred, _) = self.chain(head, after_body);
                    let pred = pred.unwrap_or(start);
                    self.cfg.add_edge(pred, start, Branch::True);
                    exit_edge = vec![(pred, Branch::False)];
                } else {
                    let (pred, _) = self.chain(head, pending);
                    let pred = pred.unwrap_or(start);
                    let mut after_body = self.seq(body, vec![(pred, Branch::True)]);
                    after_body.extend(std::mem::take(&mut self.frames.last_mut().unwrap().continues));
                    let after_update = self.seq(update, after_body);
                    self.connect(&after_update, start);
                    exit_edge = vec![(pred, Branch::False)];
                }
                let frame = self.frames.pop().unwrap();
                let mut out = self.seq(orelse, exit_edge);
                out.extend(frame.breaks);
                out
            }
            Stmt::Switch {
                head,
                cases,
                fallthrough,
                has_default,
                label,
            } => {
                let (pred, pending) = self.chain(head, pending);
                let Some(pred) = pred else { return pending };
                self.frames.push(Frame {
                    label: label.clone(),
                    is_loop: false,
                    breaks: Vec::new(),
                    continues: Vec::new(),
                });
                let mut out = Vec::new();
                let mut carry: Pending = Vec::new();
                for (i, case) in cases.iter().enumerate() {
                    let mut entry = vec![(pred, Branch::Case(i))];
                    entry.append(&mut carry);
                    let end = self.seq(case, entry);
                    if *fallthrough {
                        carry = end;
                    } else {
                        out.extend(end);
                    }
                }
                out.extend(carry);
                if !has_default {
                    out.push((pred, Branch::Default));
                }
                let frame = self.frames.pop().unwrap();
                // `continue` inside a switch belongs to the enclosing loop.
                if let Some(outer) = self.frames.iter_mut().rev().find(|f| f.is_loop) {
                    outer.continues.extend(frame.continues);
                }
                out.extend(frame.breaks);
                out
            }
            Stmt::Try {
                head,
                body,
                handlers,
                orelse,
                finally,
            } => {
                let (pred, pending) = self.chain(head, pending);
                let Some(pred) = pred else { return pending };
                let after_body = self.seq(body, vec![(pred, Branch::True)]);
                let mut out = self.seq(orelse, after_body);
                for (i, h) in handlers.iter().enumerate() {
                    out.extend(self.seq(h, vec![(pred, Branch::Case(i))]));
                }
                if handlers.is_empty() && !finally.is_empty() {
                    out.push((pred, Branch::False));
                }
                self.seq(finally, out)
            }
            Stmt::Jump { atoms, kind, label } => {
                let (last, pending) = self.chain(atoms, pending);
                let Some(last) = last else { return pending };
                let edge = (last, Branch::Jump);
                match kind {
                    JumpKind::Return | JumpKind::Throw => self.cfg.add_edge(last, EXIT, Branch::Jump),
                    JumpKind::Break => match self.frame_for(label, false) {
                        Some(f) => f.breaks.push(edge),
                        None => self.cfg.add_edge(last, EXIT, Branch::Jump),
                    },
                    JumpKind::Continue => match self.frame_for(label, true) {
                        Some(f) if f.is_loop => f.continues.push(edge),
                        _ => self.cfg.add_edge(last, EXIT, Branch::Jump),
                    },
                }
                Vec::new()
            }
        }
    }
}
