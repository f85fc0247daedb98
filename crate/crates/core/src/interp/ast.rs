use crate::ops::Rel;
use crate::word::Word;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Method {
    CharAt,
    IndexOf,
    Substring,
    Replace,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::CharAt => "charAt",
            Method::IndexOf => "indexOf",
            Method::Substring => "substring",
            Method::Replace => "replace",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Str(Word),
    Int(i64),
    Var(String),
    Unknown,
    Concat(Box<Expr>, Box<Expr>),
    Ternary(Box<Cond>, Box<Expr>, Box<Expr>),
    Call(Box<Expr>, Method, Vec<Expr>),
}

impl Expr {
    /// Whether the expression evaluates to an integer.
    pub fn is_int(&self) -> bool {
        matches!(self, Expr::Int(_) | Expr::Call(_, Method::IndexOf, _))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cond {
    Truthy(Expr),
    Not(Box<Cond>),
    /// `hay.indexOf(needle) rel k`.
    Cmp { hay: Expr, needle: Expr, rel: Rel, k: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StmtKind {
    Let(String, Expr),
    Assign(String, Expr),
    If(Cond, Vec<Stmt>, Option<Vec<Stmt>>),
    While(Cond, Vec<Stmt>),
    Return(Expr),
    Block(Vec<Stmt>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stmt {
    pub line: usize,
    pub end_line: usize,
    pub kind: StmtKind,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Program {
    pub body: Vec<Stmt>,
}

impl Program {
    /// Letters of every string literal.
    pub fn literal_letters(&self) -> Vec<char> {
        let mut out = Vec::new();
        fn expr(e: &Expr, out: &mut Vec<char>) {
            match e {
                Expr::Str(w) => out.extend(w),
                Expr::Concat(a, b) => {
                    expr(a, out);
                    expr(b, out);
                }
                Expr::Ternary(c, a, b) => {
                    cond(c, out);
                    expr(a, out);
                    expr(b, out);
                }
                Expr::Call(r, _, args) => {
                    expr(r, out);
                    args.iter().for_each(|a| expr(a, out));
                }
                Expr::Int(_) | Expr::Var(_) | Expr::Unknown => {}
            }
        }
        fn cond(c: &Cond, out: &mut Vec<char>) {
            match c {
                Cond::Truthy(e) => expr(e, out),
                Cond::Not(c) => cond(c, out),
                Cond::Cmp { hay, needle, .. } => {
                    expr(hay, out);
                    expr(needle, out);
                }
            }
        }
        fn stmts(ss: &[Stmt], out: &mut Vec<char>) {
            for s in ss {
                match &s.kind {
                    StmtKind::Let(_, e) | StmtKind::Assign(_, e) | StmtKind::Return(e) => expr(e, out),
                    StmtKind::If(c, t, e) => {
                        cond(c, out);
                        stmts(t, out);
                        if let Some(e) = e {
                            stmts(e, out);
                        }
                    }
                    StmtKind::While(c, b) => {
                        cond(c, out);
                        stmts(b, out);
                    }
                    StmtKind::Block(b) => stmts(b, out),
                }
            }
        }
        stmts(&self.body, &mut out);
        out
    }
}
