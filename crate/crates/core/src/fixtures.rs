//! Small hand-grounded programs used by tests, examples and the CLI docs.

/// Light switch program with strict constraint atoms over the hour `x`.
pub const P1: &str = "\
% light switch, strict irregular atoms
cvar x : int.
{switch}.
lightOn :- switch, not am.
:- not lightOn.
{am}.
:- not am, [x < 12]!.
:- am, [x >= 12]!.
:- [x < 0]!.
:- [x > 23]!.
";

/// Same rules as [`P1`] with every irregular atom non-strict; `x` unbounded.
pub const P1_NONSTRICT: &str = "\
cvar x : int.
{switch}.
lightOn :- switch, not am.
:- not lightOn.
{am}.
:- not am, [x < 12].
:- am, [x >= 12].
:- [x < 0].
:- [x > 23].
";

/// [`P1_NONSTRICT`] with `x` boxed to a day.
pub const P1_NONSTRICT_BOXED: &str = "\
cvar x : int [0,23].
{switch}.
lightOn :- switch, not am.
:- not lightOn.
{am}.
:- not am, [x < 12].
:- am, [x >= 12].
:- [x < 0].
:- [x > 23].
";

/// Light switch rules without constraints; `switch` and `am` are meant as
/// input atoms.
pub const LIGHT: &str = "\
lightOn :- switch, not am.
:- not lightOn.
";

pub const SELF_LOOP: &str = "p :- p.\n";

/// Four cities, unit ring roads, diagonals of cost 2, maximum cost 4.
/// Cost variables `c(X,Y)` range over `0..cost`; constraint rules are
/// denials over strict atoms.
pub const TRAVELING_SALESMAN: &str = "\
city(a). city(b). city(c). city(d).
initial(a).
road(a,b). road(b,c). road(c,d). road(d,a). road(a,c). road(b,d).
cost(a,b,1). cost(b,c,1). cost(c,d,1). cost(d,a,1). cost(a,c,2). cost(b,d,2).
maxCost(4).

% roads and costs are symmetric
road(b,a) :- road(a,b).  road(c,b) :- road(b,c).  road(d,c) :- road(c,d).
road(a,d) :- road(d,a).  road(c,a) :- road(a,c).  road(d,b) :- road(b,d).
cost(b,a,1) :- cost(a,b,1).  cost(c,b,1) :- cost(b,c,1).  cost(d,c,1) :- cost(c,d,1).
cost(a,d,1) :- cost(d,a,1).  cost(c,a,2) :- cost(a,c,2).  cost(d,b,2) :- cost(b,d,2).

% pick routes along roads
{route(a,b)} :- road(a,b).  {route(a,c)} :- road(a,c).  {route(a,d)} :- road(a,d).
{route(b,a)} :- road(b,a).  {route(b,c)} :- road(b,c).  {route(b,d)} :- road(b,d).
{route(c,a)} :- road(c,a).  {route(c,b)} :- road(c,b).  {route(c,d)} :- road(c,d).
{route(d,a)} :- road(d,a).  {route(d,b)} :- road(d,b).  {route(d,c)} :- road(d,c).

% exactly one route leaves each city
:- city(a), not route(a,b), not route(a,c), not route(a,d).
:- city(b), not route(b,a), not route(b,c), not route(b,d).
:- city(c), not route(c,a), not route(c,b), not route(c,d).
:- city(d), not route(d,a), not route(d,b), not route(d,c).
:- route(a,b), route(a,c).  :- route(a,b), route(a,d).  :- route(a,c), route(a,d).
:- route(b,a), route(b,c).  :- route(b,a), route(b,d).  :- route(b,c), route(b,d).
:- route(c,a), route(c,b).  :- route(c,a), route(c,d).  :- route(c,b), route(c,d).
:- route(d,a), route(d,b).  :- route(d,a), route(d,c).  :- route(d,b), route(d,c).

% exactly one route enters each city
:- city(a), not route(b,a), not route(c,a), not route(d,a).
:- city(b), not route(a,b), not route(c,b), not route(d,b).
:- city(c), not route(a,c), not route(b,c), not route(d,c).
:- city(d), not route(a,d), not route(b,d), not route(c,d).
:- route(b,a), route(c,a).  :- route(b,a), route(d,a).  :- route(c,a), route(d,a).
:- route(a,b), route(c,b).  :- route(a,b), route(d,b).  :- route(c,b), route(d,b).
:- route(a,c), route(b,c).  :- route(a,c), route(d,c).  :- route(b,c), route(d,c).
:- route(a,d), route(b,d).  :- route(a,d), route(c,d).  :- route(b,d), route(c,d).

% every city is reached from the initial one
reached(a) :- initial(a).
reached(b) :- reached(a), route(a,b).  reached(c) :- reached(a), route(a,c).  reached(d) :- reached(a), route(a,d).
reached(a) :- reached(b), route(b,a).  reached(c) :- reached(b), route(b,c).  reached(d) :- reached(b), route(b,d).
reached(a) :- reached(c), route(c,a).  reached(b) :- reached(c), route(c,b).  reached(d) :- reached(c), route(c,d).
reached(a) :- reached(d), route(d,a).  reached(b) :- reached(d), route(d,b).  reached(c) :- reached(d), route(d,c).
:- city(a), not reached(a).  :- city(b), not reached(b).
:- city(c), not reached(c).  :- city(d), not reached(d).

% time spent on a road: 0 off the route, its cost on the route
cvar c(a,b) : int [0,1].  cvar c(b,a) : int [0,1].
cvar c(b,c) : int [0,1].  cvar c(c,b) : int [0,1].
cvar c(c,d) : int [0,1].  cvar c(d,c) : int [0,1].
cvar c(d,a) : int [0,1].  cvar c(a,d) : int [0,1].
cvar c(a,c) : int [0,2].  cvar c(c,a) : int [0,2].
cvar c(b,d) : int [0,2].  cvar c(d,b) : int [0,2].

:- cost(a,b,1), not route(a,b), [c(a,b) != 0]!.  :- cost(a,b,1), route(a,b), [c(a,b) != 1]!.
:- cost(b,a,1), not route(b,a), [c(b,a) != 0]!.  :- cost(b,a,1), route(b,a), [c(b,a) != 1]!.
:- cost(b,c,1), not route(b,c), [c(b,c) != 0]!.  :- cost(b,c,1), route(b,c), [c(b,c) != 1]!.
:- cost(c,b,1), not route(c,b), [c(c,b) != 0]!.  :- cost(c,b,1), route(c,b), [c(c,b) != 1]!.
:- cost(c,d,1), not route(c,d), [c(c,d) != 0]!.  :- cost(c,d,1), route(c,d), [c(c,d) != 1]!.
:- cost(d,c,1), not route(d,c), [c(d,c) != 0]!.  :- cost(d,c,1), route(d,c), [c(d,c) != 1]!.
:- cost(d,a,1), not route(d,a), [c(d,a) != 0]!.  :- cost(d,a,1), route(d,a), [c(d,a) != 1]!.
:- cost(a,d,1), not route(a,d), [c(a,d) != 0]!.  :- cost(a,d,1), route(a,d), [c(a,d) != 1]!.
:- cost(a,c,2), not route(a,c), [c(a,c) != 0]!.  :- cost(a,c,2), route(a,c), [c(a,c) != 2]!.
:- cost(c,a,2), not route(c,a), [c(c,a) != 0]!.  :- cost(c,a,2), route(c,a), [c(c,a) != 2]!.
:- cost(b,d,2), not route(b,d), [c(b,d) != 0]!.  :- cost(b,d,2), route(b,d), [c(b,d) != 2]!.
:- cost(d,b,2), not route(d,b), [c(d,b) != 0]!.  :- cost(d,b,2), route(d,b), [c(d,b) != 2]!.

% total time within the maximum cost
:- maxCost(4), [c(a,b) + c(b,a) + c(b,c) + c(c,b) + c(c,d) + c(d,c) + c(d,a) + c(a,d) + c(a,c) + c(c,a) + c(b,d) + c(d,b) > 4]!.
";
