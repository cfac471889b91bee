use super::{RefRegex, RefSymbol};

/// Thompson ε-NFA over ref symbols; `None` labels are ε-edges.
#[derive(Debug, Clone)]
pub struct Nfa {
    pub start: usize,
    pub accept: usize,
    pub edges: Vec<Vec<(Option<RefSymbol>, usize)>>,
}

impl Nfa {
    pub fn thompson(r: &RefRegex) -> Nfa {
        let mut nfa = Nfa {
            start: 0,
            accept: 0,
            edges: Vec::new(),
        };
        let (s, e) = nfa.build(r);
        nfa.start = s;
        nfa.accept = e;
        nfa
    }

    fn new_state(&mut self) -> usize {
        self.edges.push(Vec::new());
        self.edges.len() - 1
    }

    fn edge(&mut self, from: usize, label: Option<RefSymbol>, to: usize) {
        self.edges[from].push((label, to));
    }

    fn build(&mut self, r: &RefRegex) -> (usize, usize) {
        match r {
            RefRegex::Empty => (self.new_state(), self.new_state()),
            RefRegex::Epsilon => {
                let s = self.new_state();
                let e = self.new_state();
                self.edge(s, None, e);
                (s, e)
            }
            RefRegex::Sym(sym) => {
                let s = self.new_state();
                let e = self.new_state();
                self.edge(s, Some(sym.clone()), e);
                (s, e)
            }
            RefRegex::Concat(a, b) => {
                let (s1, e1) = self.build(a);
                let (s2, e2) = self.build(b);
                self.edge(e1, None, s2);
                (s1, e2)
            }
            RefRegex::Alt(a, b) => {
                let s = self.new_state();
                let (s1, e1) = self.build(a);
                let (s2, e2) = self.build(b);
                let e = self.new_state();
                self.edge(s, None, s1);
                self.edge(s, None, s2);
                self.edge(e1, None, e);
                self.edge(e2, None, e);
                (s, e)
            }
            RefRegex::Plus(a) => {
                let s = self.new_state();
                let (s1, e1) = self.build(a);
                let e = self.new_state();
                self.edge(s, None, s1);
                self.edge(e1, None, s1);
                self.edge(e1, None, e);
                (s, e)
            }
        }
    }
}
