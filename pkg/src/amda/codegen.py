"""Source text generation from a platform-specific model.

Per automaton one class file extending the abstract ``ClassPHSA``, plus
one class each for the condition scheme, the memory and the I/O system;
shared files hold the abstract base (with the small data carriers it
aggregates), the application dispatcher and, for the java-like syntax,
the console input helper.

The transition function becomes the ``handler`` method: one branch per
non-final state, one sub-branch per outgoing transition in table order.
Completion transitions keep that order except that an unguarded one
becomes the unconditional tail of its branch, so guarded alternatives
are tested first.  Guards read memory members directly; state identity
uses lowercased state ids.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import expr as X
from .lowering import LoweringError, lower_expr
from .pim import PimError
from .psm import check_psm

TARGET_SYNTAXES = ("java-like", "csharp-like")


class CodegenError(Exception):
    def __init__(self, code: str, message: str):
        super().__init__("%s: %s" % (code, message))
        self.code = code
        self.detail = message


@dataclass
class SourceSet:
    files: list = field(default_factory=list)  # (file name, text)

    def add(self, name: str, text: str) -> None:
        if any(existing == name for existing, _ in self.files):
            raise CodegenError("duplicate-file", "file %r generated twice" % name)
        self.files.append((name, text))

    def text_of(self, name: str) -> str:
        for existing, text in self.files:
            if existing == name:
                return text
        raise KeyError(name)


# -- parsed PSM view ---------------------------------------------------------


@dataclass
class _PsmState:
    id: str
    name: str
    kind: str
    actions: list  # (tag, attrs, text)


@dataclass
class _PsmAutomaton:
    id: str
    states: list
    events: list  # (id, description)
    transitions: list  # (src, dest, event, cond)
    conditions: list  # (id, text)
    funcs: list  # (id, body text, external)
    variables: list  # (name, platform type, init text, control)
    io_actions: list  # (tag, attrs)


def _parse_psm(psm_bytes: bytes):
    root = check_psm(psm_bytes)
    imports = [(el.text or "").strip() for el in root.find("Imports")]
    foundation = root.find("FoundationClasses")
    ordered = (foundation.find("OrderedCollection").text or "").strip()
    unordered = (foundation.find("UnorderedCollection").text or "").strip()
    profile = root.get("profile", "")

    automata = []
    for phsa in root.iter("phsa"):
        automat, condscheme, memory, iosystem = list(phsa)
        states_el, events_el, transitions_el = list(automat)
        states = []
        for s in states_el:
            actions = []
            for wrapper in s:
                act = list(wrapper)[0]
                actions.append((act.tag, dict(act.attrib), (act.text or "").strip()))
            states.append(_PsmState(s.get("state_id"), s.get("state_name"),
                                    s.get("kind", "ordinary"), actions))
        conditions_el, funcs_el = list(condscheme)
        automata.append(_PsmAutomaton(
            id=phsa.get("phsa_id"),
            states=states,
            events=[(e.get("event_id"), e.get("description", "")) for e in events_el],
            transitions=[(t.get("state_src"), t.get("state_dest"),
                          t.get("event_ref"), t.get("cond_ref")) for t in transitions_el],
            conditions=[(c.get("cond_id"), (c.text or "").strip()) for c in conditions_el],
            funcs=[(f.get("act_id"), (f.text or "").strip(),
                    f.get("external", "false") == "true") for f in funcs_el],
            variables=[(v.get("psm_var_name"), v.get("psm_var_type"),
                        v.get("init", ""), v.get("gui_control", ""))
                       for v in list(memory)[0]],
            io_actions=[(a.tag, dict(a.attrib)) for a in list(iosystem)[0]],
        ))
    return root.tag, profile, imports, ordered, unordered, automata


# -- emission ----------------------------------------------------------------


def _lower(text: str) -> str:
    try:
        return lower_expr(X.parse_expr(text))
    except LoweringError as err:
        raise CodegenError("unsupported-expression-node", str(err)) from err
    except X.ExprError as err:
        raise CodegenError("unsupported-expression-node",
                           "cannot lower %r: %s" % (text, err)) from err


def generate(psm_bytes: bytes, target_syntax: str, dispatcher=None) -> SourceSet:
    """Emit all source files for one PSM.

    ``dispatcher`` is the optional DispatcherDoc feeding the application
    dispatcher class; without it a single default instance per automaton
    is assumed.
    """
    if target_syntax not in TARGET_SYNTAXES:
        raise CodegenError("unknown-syntax", "target syntax %r not supported" % target_syntax)
    java = target_syntax == "java-like"
    ext = ".java" if java else ".cs"

    try:
        _, _, imports, ordered, unordered, automata = _parse_psm(psm_bytes)
    except PimError as err:
        raise CodegenError(err.code, err.detail) from err

    out = SourceSet()
    out.add("ClassPHSA" + ext, _base_class(java, imports))
    if java:
        out.add("Console.java", _console_helper())
    for a in automata:
        out.add("Phsa%s%s" % (a.id, ext), _automaton_class(a, java, imports, unordered))
        out.add("ConditionScheme%s%s" % (a.id, ext), _scheme_class(a, java, imports, unordered))
        out.add("Memory%s%s" % (a.id, ext), _memory_class(a, java, imports, unordered))
        out.add("IOSystem%s%s" % (a.id, ext), _iosystem_class(a, java, imports, unordered))
    out.add("ApplicationDispatcher" + ext, _dispatcher_class(automata, dispatcher, java, imports))
    return out


def _jstr(text: str) -> str:
    """Escape text for embedding inside a generated string literal."""
    return text.replace("\\", "\\\\").replace('"', '\\"')


def _imports_block(java: bool, imports) -> list:
    if java:
        return ["import %s;" % imp for imp in imports]
    return ["using %s;" % imp for imp in imports]


def _class_head(java: bool, name: str, base: str = "") -> str:
    if base:
        link = "extends" if java else ":"
        return "public class %s %s %s {" % (name, link, base) if java \
            else "public class %s : %s {" % (name, base)
    return "public class %s {" % name


def _state_ref(state_id: str) -> str:
    return state_id.lower()


def _automaton_class(a: _PsmAutomaton, java: bool, imports, unordered: str) -> str:
    cond_text = dict(a.conditions)
    has_entries = {s.id: bool(s.actions) for s in a.states}
    lines = _imports_block(java, imports)
    lines += ["", _class_head(java, "Phsa" + a.id, "ClassPHSA")]

    initial = next((s for s in a.states if s.kind == "initial"), None)
    for name, vtype, init, _control in a.variables:
        lines.append("    private %s %s=%s;" % (vtype, name, _lower(init)))
    if a.variables:
        lines.append("")
    lines.append("    private %s states = new %s();" % (unordered, unordered))
    lines.append("    private %s transitions = new %s();" % (unordered, unordered))
    lines.append("")
    ctor = "    public Phsa%s() {" % a.id
    lines.append(ctor)
    if initial is not None:
        lines.append('        _cstate = "%s";' % _state_ref(initial.id))
    for s in a.states:
        lines.append('        states.put("%s", new State("%s", "%s"));'
                     % (_state_ref(s.id), _state_ref(s.id), s.name))
    for index, (src, dest, event, cond) in enumerate(a.transitions):
        lines.append('        transitions.put("t%d", new Transition("%s", "%s", "%s", "%s"));'
                     % (index, _state_ref(src), _state_ref(dest), event or "", cond or ""))
    lines.append("    }")
    lines.append("")
    lines.extend(_handler(a, cond_text, has_entries))

    for s in a.states:
        if not s.actions:
            continue
        lines.append("")
        lines.append("    private void %s() {" % _state_ref(s.id))
        for tag, attrs, text in s.actions:
            lines.extend("        " + stmt for stmt in _action_statements(a, tag, attrs, text))
        lines.append("    }")

    for func_id, body, external in a.funcs:
        lines.append("")
        lines.append("    private void %s() {" % func_id)
        if external:
            lines.append("        // external routine: body supplied by the application")
        else:
            for stmt in X.parse_stmts(body):
                lines.extend("        " + line for line in _lower_stmt(a, stmt))
        lines.append("    }")

    lines.append("}")
    return "\n".join(lines) + "\n"


def _handler(a: _PsmAutomaton, cond_text: dict, has_entries: dict) -> list:
    lines = ["    public void handler() {"]
    first_state = True
    for s in a.states:
        if s.kind == "final":
            continue
        head = "if" if first_state else "else if"
        first_state = False
        lines.append('        %s (_cstate.equals("%s")) {' % (head, _state_ref(s.id)))
        rows = [t for t in a.transitions if t[0] == s.id]
        # the unguarded completion falls to the unconditional tail
        tail = [t for t in rows if t[2] is None and t[3] is None]
        if len(tail) > 1:
            raise CodegenError("ambiguous-completions",
                               "state %s has %d unguarded completion transitions" % (s.id, len(tail)))
        tests = [t for t in rows if t[2] is not None or t[3] is not None]
        branch_open = False
        for src, dest, event, cond in tests:
            parts = []
            if event is not None:
                parts.append('_event.equals("%s")' % event)
            if cond is not None:
                parts.append(_lower(cond_text[cond]))
            keyword = "if" if not branch_open else "else if"
            branch_open = True
            lines.append("            %s (%s) {" % (keyword, " && ".join(parts)))
            lines.extend(_move_lines(dest, has_entries, indent="                "))
            lines.append("            }")
        for src, dest, event, cond in tail:
            if branch_open:
                lines.append("            else {")
                lines.extend(_move_lines(dest, has_entries, indent="                "))
                lines.append("            }")
            else:
                lines.extend(_move_lines(dest, has_entries, indent="            "))
        lines.append("        }")
    lines.append("    }")
    return lines


def _move_lines(dest: str, has_entries: dict, indent: str) -> list:
    lines = ['%s_cstate="%s";' % (indent, _state_ref(dest))]
    if has_entries.get(dest):
        lines.append("%s%s();" % (indent, _state_ref(dest)))
    return lines


def _action_statements(a: _PsmAutomaton, tag: str, attrs: dict, text: str) -> list:
    if tag == "act_send_event":
        return ['_send("%s");' % attrs.get("event_id")]
    if tag == "act_func":
        return ["%s();" % attrs.get("act_id")]
    if tag == "act_activate":
        return ['_activate("%s");' % attrs.get("phsa_ref")]
    # act_inline
    stmts = X.parse_stmts(text)
    out = []
    for stmt in stmts:
        out.extend(_lower_stmt(a, stmt))
    return out


def _lower_stmt(a: _PsmAutomaton, stmt) -> list:
    if isinstance(stmt, X.Assign):
        return ["%s = %s;" % (stmt.target, lower_expr(stmt.value))]
    if isinstance(stmt, X.CallFunc):
        return ["%s();" % stmt.func]
    if isinstance(stmt, X.SendStmt):
        return ['_send("%s");' % stmt.event]
    if isinstance(stmt, X.IoStmt):
        for tag, attrs in a.io_actions:
            if attrs.get("io_id") == stmt.action:
                statement = attrs.get("statement", "")
                return [statement if statement.endswith(";") else statement + ";"]
        raise CodegenError("unsupported-expression-node",
                           "io action %r has no statement in the PSM" % stmt.action)
    raise CodegenError("unsupported-expression-node", "cannot lower %r" % (stmt,))


def _scheme_class(a, java, imports, unordered) -> str:
    lines = _imports_block(java, imports)
    lines += ["", _class_head(java, "ConditionScheme" + a.id)]
    lines.append("    private %s guards = new %s();" % (unordered, unordered))
    lines.append("    private %s funcActions = new %s();" % (unordered, unordered))
    lines.append("")
    lines.append("    public ConditionScheme%s() {" % a.id)
    for cid, text in a.conditions:
        lines.append('        guards.put("%s", new Guard("%s", "%s"));'
                     % (cid, cid, _jstr(text)))
    for func_id, body, external in a.funcs:
        lines.append('        funcActions.put("%s", new FuncAction("%s", %s));'
                     % (func_id, func_id, "true" if external else "false"))
    lines.append("    }")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _memory_class(a, java, imports, unordered) -> str:
    lines = _imports_block(java, imports)
    lines += ["", _class_head(java, "Memory" + a.id)]
    lines.append("    private %s variables = new %s();" % (unordered, unordered))
    lines.append("")
    lines.append("    public Memory%s() {" % a.id)
    for name, vtype, init, _control in a.variables:
        lines.append('        variables.put("%s", new Variable("%s", "%s", "%s"));'
                     % (name, name, vtype, _jstr(_lower(init))))
    lines.append("    }")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _iosystem_class(a, java, imports, unordered) -> str:
    lines = _imports_block(java, imports)
    lines += ["", _class_head(java, "IOSystem" + a.id)]
    lines.append("    private %s ioActions = new %s();" % (unordered, unordered))
    lines.append("")
    lines.append("    public IOSystem%s() {" % a.id)
    for tag, attrs in a.io_actions:
        direction = "input" if tag == "i_action" else "output"
        lines.append('        ioActions.put("%s", new IOAction("%s", "%s", "%s", "%s", "%s"));'
                     % (attrs.get("io_id"), attrs.get("io_id"), direction,
                        attrs.get("mode"), _jstr(attrs.get("statement", "")),
                        attrs.get("destination", "")))
    lines.append("    }")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _dispatcher_class(automata, dispatcher, java, imports) -> str:
    lines = _imports_block(java, imports)
    lines += ["", _class_head(java, "ApplicationDispatcher")]
    if dispatcher is not None:
        instances = [(inst.id, inst.phsa) for inst in dispatcher.instances]
        routes = [(r.sender, r.event, r.receiver) for r in dispatcher.routes]
    else:
        instances = [(a.id.lower(), a.id) for a in automata]
        routes = []
    for inst_id, phsa in instances:
        lines.append("    private Phsa%s %s = new Phsa%s();" % (phsa, inst_id, phsa))
    lines.append("")
    lines.append("    public void route(String sender, String eventId) {")
    first = True
    for sender, event, receiver in routes:
        keyword = "if" if first else "else if"
        first = False
        lines.append('        %s (sender.equals("%s") && eventId.equals("%s")) {'
                     % (keyword, sender, event))
        lines.append("            %s.post(eventId);" % receiver)
        lines.append("        }")
    if first:
        lines.append("        // no routes defined")
    lines.append("    }")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _base_class(java: bool, imports) -> str:
    if java:
        head = [
            "import java.util.ArrayList;",
            "",
            "// Base behavior shared by every generated automaton class, plus the",
            "// small data carriers the generated component classes aggregate.",
            "public abstract class ClassPHSA {",
            '    protected String _cstate = "";',
            '    protected String _event = "";',
            "    protected ArrayList _sent = new ArrayList();",
            "",
            "    public abstract void handler();",
            "",
            "    public void post(String eventId) {",
            "        _event = eventId;",
            "        handler();",
            "    }",
            "",
            "    protected void _send(String eventId) {",
            "        _sent.add(eventId);",
            "    }",
            "",
            "    protected void _activate(String phsaId) {",
            '        _sent.add("activate:" + phsaId);',
            "    }",
            "",
            "    protected static ArrayList seq(Object... items) {",
            "        ArrayList list = new ArrayList();",
            "        for (Object item : items) { list.add(item); }",
            "        return list;",
            "    }",
            "",
            "    protected static ArrayList set(Object... items) {",
            "        return seq(items);",
            "    }",
            "",
            "    protected static int size(Object value) {",
            '        if (value instanceof String) { return ((String) value).length(); }',
            "        return ((ArrayList) value).size();",
            "    }",
            "}",
        ]
        carriers = [
            "",
            "class State { String id; String name; State(String id, String name) { this.id = id; this.name = name; } }",
            "class Event { String id; String description; Event(String id, String description) { this.id = id; this.description = description; } }",
            "class Guard { String id; String body; Guard(String id, String body) { this.id = id; this.body = body; } }",
            "class Transition { String src; String dest; String eventRef; String condRef; Transition(String src, String dest, String eventRef, String condRef) { this.src = src; this.dest = dest; this.eventRef = eventRef; this.condRef = condRef; } }",
            "class Action { String kind; String detail; Action(String kind, String detail) { this.kind = kind; this.detail = detail; } }",
            "class Variable { String name; String type; String init; Variable(String name, String type, String init) { this.name = name; this.type = type; this.init = init; } }",
            "class FuncAction { String id; boolean external; FuncAction(String id, boolean external) { this.id = id; this.external = external; } }",
            "class OclExpression { String text; OclExpression(String text) { this.text = text; } }",
            "class SendEvent { String eventId; SendEvent(String eventId) { this.eventId = eventId; } }",
            "class IOAction { String id; String direction; String mode; String statement; String destination; IOAction(String id, String direction, String mode, String statement, String destination) { this.id = id; this.direction = direction; this.mode = mode; this.statement = statement; this.destination = destination; } }",
            "class Window { String title; Window(String title) { this.title = title; } }",
            "class StreamInput { String source; StreamInput(String source) { this.source = source; } }",
            "class StreamOutput { String destination; StreamOutput(String destination) { this.destination = destination; } }",
            "class GuiInput { static String read() { return \"\"; } }",
            "class GuiOutput { static void show(Object value) { } }",
        ]
        return "\n".join(head + carriers) + "\n"

    head = [
        "using System.Collections;",
        "",
        "// Base behavior shared by every generated automaton class, plus the",
        "// small data carriers the generated component classes aggregate.",
        "public abstract class ClassPHSA {",
        '    protected string _cstate = "";',
        '    protected string _event = "";',
        "    protected ArrayList _sent = new ArrayList();",
        "",
        "    public abstract void handler();",
        "",
        "    public void post(string eventId) {",
        "        _event = eventId;",
        "        handler();",
        "    }",
        "",
        "    protected void _send(string eventId) {",
        "        _sent.Add(eventId);",
        "    }",
        "",
        "    protected void _activate(string phsaId) {",
        '        _sent.Add("activate:" + phsaId);',
        "    }",
        "",
        "    protected static ArrayList seq(params object[] items) {",
        "        ArrayList list = new ArrayList();",
        "        foreach (object item in items) { list.Add(item); }",
        "        return list;",
        "    }",
        "",
        "    protected static ArrayList set(params object[] items) {",
        "        return seq(items);",
        "    }",
        "",
        "    protected static int size(object value) {",
        "        if (value is string) { return ((string) value).Length; }",
        "        return ((ArrayList) value).Count;",
        "    }",
        "}",
    ]
    carriers = [
        "",
        "class State { public string id; public string name; public State(string id, string name) { this.id = id; this.name = name; } }",
        "class Event { public string id; public string description; public Event(string id, string description) { this.id = id; this.description = description; } }",
        "class Guard { public string id; public string body; public Guard(string id, string body) { this.id = id; this.body = body; } }",
        "class Transition { public string src; public string dest; public string eventRef; public string condRef; public Transition(string src, string dest, string eventRef, string condRef) { this.src = src; this.dest = dest; this.eventRef = eventRef; this.condRef = condRef; } }",
        "class Action { public string kind; public string detail; public Action(string kind, string detail) { this.kind = kind; this.detail = detail; } }",
        "class Variable { public string name; public string type; public string init; public Variable(string name, string type, string init) { this.name = name; this.type = type; this.init = init; } }",
        "class FuncAction { public string id; public bool external; public FuncAction(string id, bool external) { this.id = id; this.external = external; } }",
        "class OclExpression { public string text; public OclExpression(string text) { this.text = text; } }",
        "class SendEvent { public string eventId; public SendEvent(string eventId) { this.eventId = eventId; } }",
        "class IOAction { public string id; public string direction; public string mode; public string statement; public string destination; public IOAction(string id, string direction, string mode, string statement, string destination) { this.id = id; this.direction = direction; this.mode = mode; this.statement = statement; this.destination = destination; } }",
        "class Window { public string title; public Window(string title) { this.title = title; } }",
        "class StreamInput { public string source; public StreamInput(string source) { this.source = source; } }",
        "class StreamOutput { public string destination; public StreamOutput(string destination) { this.destination = destination; } }",
        "class GuiInput { public static string read() { return \"\"; } }",
        "class GuiOutput { public static void show(object value) { } }",
    ]
    return "\n".join(head + carriers) + "\n"


def _console_helper() -> str:
    return "\n".join([
        "import java.io.BufferedReader;",
        "import java.io.InputStreamReader;",
        "",
        "// Small helper wrapping console input behind a single call.",
        "public class Console {",
        "    public static String readLine() {",
        "        try {",
        "            return new BufferedReader(new InputStreamReader(System.in)).readLine();",
        "        } catch (Exception e) {",
        '            return "";',
        "        }",
        "    }",
        "}",
    ]) + "\n"


# -- lexical well-formedness --------------------------------------------------


def lexically_balanced(text: str) -> bool:
    """Brackets balanced outside string/char literals and comments."""
    depth = {"(": 0, "[": 0, "{": 0}
    close = {")": "(", "]": "[", "}": "{"}
    i = 0
    in_string = in_char = in_line_comment = False
    while i < len(text):
        c = text[i]
        if in_line_comment:
            if c == "\n":
                in_line_comment = False
        elif in_string:
            if c == "\\":
                i += 1
            elif c == '"':
                in_string = False
        elif in_char:
            if c == "\\":
                i += 1
            elif c == "'":
                in_char = False
        elif c == "/" and text.startswith("//", i):
            in_line_comment = True
        elif c == '"':
            in_string = True
        elif c == "'":
            in_char = True
        elif c in depth:
            depth[c] += 1
        elif c in close:
            depth[close[c]] -= 1
            if depth[close[c]] < 0:
                return False
        i += 1
    return all(v == 0 for v in depth.values()) and not in_string and not in_char
