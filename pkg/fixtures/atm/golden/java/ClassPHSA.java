import java.util.ArrayList;

// Base behavior shared by every generated automaton class, plus the
// small data carriers the generated component classes aggregate.
public abstract class ClassPHSA {
    protected String _cstate = "";
    protected String _event = "";
    protected ArrayList _sent = new ArrayList();

    public abstract void handler();

    public void post(String eventId) {
        _event = eventId;
        handler();
    }

    protected void _send(String eventId) {
        _sent.add(eventId);
    }

    protected void _activate(String phsaId) {
        _sent.add("activate:" + phsaId);
    }

    protected static ArrayList seq(Object... items) {
        ArrayList list = new ArrayList();
        for (Object item : items) { list.add(item); }
        return list;
    }

    protected static ArrayList set(Object... items) {
        return seq(items);
    }

    protected static int size(Object value) {
        if (value instanceof String) { return ((String) value).length(); }
        return ((ArrayList) value).size();
    }
}

class State { String id; String name; State(String id, String name) { this.id = id; this.name = name; } }
class Event { String id; String description; Event(String id, String description) { this.id = id; this.description = description; } }
class Guard { String id; String body; Guard(String id, String body) { this.id = id; this.body = body; } }
class Transition { String src; String dest; String eventRef; String condRef; Transition(String src, String dest, String eventRef, String condRef) { this.src = src; this.dest = dest; this.eventRef = eventRef; this.condRef = condRef; } }
class Action { String kind; String detail; Action(String kind, String detail) { this.kind = kind; this.detail = detail; } }
class Variable { String name; String type; String init; Variable(String name, String type, String init) { this.name = name; this.type = type; this.init = init; } }
class FuncAction { String id; boolean external; FuncAction(String id, boolean external) { this.id = id; this.external = external; } }
class OclExpression { String text; OclExpression(String text) { this.text = text; } }
class SendEvent { String eventId; SendEvent(String eventId) { this.eventId = eventId; } }
class IOAction { String id; String direction; String mode; String statement; String destination; IOAction(String id, String direction, String mode, String statement, String destination) { this.id = id; this.direction = direction; this.mode = mode; this.statement = statement; this.destination = destination; } }
class Window { String title; Window(String title) { this.title = title; } }
class StreamInput { String source; StreamInput(String source) { this.source = source; } }
class StreamOutput { String destination; StreamOutput(String destination) { this.destination = destination; } }
class GuiInput { static String read() { return ""; } }
class GuiOutput { static void show(Object value) { } }
