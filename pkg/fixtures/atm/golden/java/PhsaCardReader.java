import java.io.*;
import javax.swing.*;

public class PhsaCardReader extends ClassPHSA {
    private HashTable states = new HashTable();
    private HashTable transitions = new HashTable();

    public PhsaCardReader() {
        _cstate = "cardreader_s0";
        states.put("cardreader_end", new State("cardreader_end", "End"));
        states.put("cardreader_idle", new State("cardreader_idle", "Idle"));
        states.put("cardreader_s0", new State("cardreader_s0", "S0"));
        transitions.put("t0", new Transition("cardreader_s0", "cardreader_idle", "", ""));
        transitions.put("t1", new Transition("cardreader_idle", "cardreader_idle", "ev2", ""));
        transitions.put("t2", new Transition("cardreader_idle", "cardreader_idle", "ev12", ""));
        transitions.put("t3", new Transition("cardreader_idle", "cardreader_end", "ev17", ""));
    }

    public void handler() {
        if (_cstate.equals("cardreader_idle")) {
            if (_event.equals("ev2")) {
                _cstate="cardreader_idle";
            }
            else if (_event.equals("ev12")) {
                _cstate="cardreader_idle";
            }
            else if (_event.equals("ev17")) {
                _cstate="cardreader_end";
            }
        }
        else if (_cstate.equals("cardreader_s0")) {
            _cstate="cardreader_idle";
        }
    }
}
