import java.io.*;
import javax.swing.*;

public class PhsaKeyboard extends ClassPHSA {
    private HashTable states = new HashTable();
    private HashTable transitions = new HashTable();

    public PhsaKeyboard() {
        _cstate = "keyboard_s0";
        states.put("keyboard_end", new State("keyboard_end", "End"));
        states.put("keyboard_idle", new State("keyboard_idle", "Idle"));
        states.put("keyboard_s0", new State("keyboard_s0", "S0"));
        transitions.put("t0", new Transition("keyboard_s0", "keyboard_idle", "", ""));
        transitions.put("t1", new Transition("keyboard_idle", "keyboard_idle", "ev5", ""));
        transitions.put("t2", new Transition("keyboard_idle", "keyboard_end", "ev18", ""));
    }

    public void handler() {
        if (_cstate.equals("keyboard_idle")) {
            if (_event.equals("ev5")) {
                _cstate="keyboard_idle";
            }
            else if (_event.equals("ev18")) {
                _cstate="keyboard_end";
            }
        }
        else if (_cstate.equals("keyboard_s0")) {
            _cstate="keyboard_idle";
        }
    }
}
