import java.io.*;
import javax.swing.*;

public class PhsaMonitor extends ClassPHSA {
    private HashTable states = new HashTable();
    private HashTable transitions = new HashTable();

    public PhsaMonitor() {
        _cstate = "monitor_s0";
        states.put("monitor_end", new State("monitor_end", "End"));
        states.put("monitor_idle", new State("monitor_idle", "Idle"));
        states.put("monitor_s0", new State("monitor_s0", "S0"));
        transitions.put("t0", new Transition("monitor_s0", "monitor_idle", "", ""));
        transitions.put("t1", new Transition("monitor_idle", "monitor_idle", "ev1", ""));
        transitions.put("t2", new Transition("monitor_idle", "monitor_idle", "ev4", ""));
        transitions.put("t3", new Transition("monitor_idle", "monitor_idle", "ev9", ""));
        transitions.put("t4", new Transition("monitor_idle", "monitor_idle", "ev10", ""));
        transitions.put("t5", new Transition("monitor_idle", "monitor_idle", "ev11", ""));
        transitions.put("t6", new Transition("monitor_idle", "monitor_idle", "ev14", ""));
        transitions.put("t7", new Transition("monitor_idle", "monitor_end", "ev16", ""));
    }

    public void handler() {
        if (_cstate.equals("monitor_idle")) {
            if (_event.equals("ev1")) {
                _cstate="monitor_idle";
            }
            else if (_event.equals("ev4")) {
                _cstate="monitor_idle";
            }
            else if (_event.equals("ev9")) {
                _cstate="monitor_idle";
            }
            else if (_event.equals("ev10")) {
                _cstate="monitor_idle";
            }
            else if (_event.equals("ev11")) {
                _cstate="monitor_idle";
            }
            else if (_event.equals("ev14")) {
                _cstate="monitor_idle";
            }
            else if (_event.equals("ev16")) {
                _cstate="monitor_end";
            }
        }
        else if (_cstate.equals("monitor_s0")) {
            _cstate="monitor_idle";
        }
    }
}
