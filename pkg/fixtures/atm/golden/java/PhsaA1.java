import java.io.*;
import javax.swing.*;

public class PhsaA1 extends ClassPHSA {
    private int errors=0;
    private boolean PIN_code_OK=false;

    private HashTable states = new HashTable();
    private HashTable transitions = new HashTable();

    public PhsaA1() {
        _cstate = "a1_s0";
        states.put("a1_end", new State("a1_end", "End"));
        states.put("a1_s0", new State("a1_s0", "S0"));
        states.put("a1_s1", new State("a1_s1", "S1"));
        states.put("a1_s2", new State("a1_s2", "S2"));
        states.put("a1_s3", new State("a1_s3", "S3"));
        states.put("a1_s4", new State("a1_s4", "S4"));
        states.put("a1_s5", new State("a1_s5", "S5"));
        states.put("a1_s6", new State("a1_s6", "S6"));
        states.put("a1_s7", new State("a1_s7", "S7"));
        transitions.put("t0", new Transition("a1_s0", "a1_s1", "", ""));
        transitions.put("t1", new Transition("a1_s1", "a1_s2", "ev3", ""));
        transitions.put("t2", new Transition("a1_s2", "a1_end", "ev7", ""));
        transitions.put("t3", new Transition("a1_s2", "a1_s3", "ev8", ""));
        transitions.put("t4", new Transition("a1_s3", "a1_s4", "", "c_e0a1294f"));
        transitions.put("t5", new Transition("a1_s3", "a1_s6", "", "c_56d0c7f4"));
        transitions.put("t6", new Transition("a1_s3", "a1_s5", "", "c_d65458cf"));
        transitions.put("t7", new Transition("a1_s4", "a1_end", "", ""));
        transitions.put("t8", new Transition("a1_s5", "a1_s2", "", ""));
        transitions.put("t9", new Transition("a1_s6", "a1_s7", "ev13", ""));
        transitions.put("t10", new Transition("a1_s7", "a1_end", "ev15", ""));
    }

    public void handler() {
        if (_cstate.equals("a1_s0")) {
            _cstate="a1_s1";
            a1_s1();
        }
        else if (_cstate.equals("a1_s1")) {
            if (_event.equals("ev3")) {
                _cstate="a1_s2";
                a1_s2();
            }
        }
        else if (_cstate.equals("a1_s2")) {
            if (_event.equals("ev7")) {
                _cstate="a1_end";
            }
            else if (_event.equals("ev8")) {
                _cstate="a1_s3";
                a1_s3();
            }
        }
        else if (_cstate.equals("a1_s3")) {
            if (PIN_code_OK==true) {
                _cstate="a1_s4";
                a1_s4();
            }
            else if (errors==3) {
                _cstate="a1_s6";
                a1_s6();
            }
            else if (PIN_code_OK==false && errors<3) {
                _cstate="a1_s5";
                a1_s5();
            }
        }
        else if (_cstate.equals("a1_s4")) {
            _cstate="a1_end";
        }
        else if (_cstate.equals("a1_s5")) {
            _cstate="a1_s2";
            a1_s2();
        }
        else if (_cstate.equals("a1_s6")) {
            if (_event.equals("ev13")) {
                _cstate="a1_s7";
                a1_s7();
            }
        }
        else if (_cstate.equals("a1_s7")) {
            if (_event.equals("ev15")) {
                _cstate="a1_end";
            }
        }
    }

    private void a1_s1() {
        _send("ev1");
        _send("ev2");
    }

    private void a1_s2() {
        _send("ev4");
        _send("ev5");
    }

    private void a1_s3() {
        verifyPINCode();
    }

    private void a1_s4() {
        _send("ev9");
    }

    private void a1_s5() {
        _send("ev10");
    }

    private void a1_s6() {
        _send("ev11");
        _send("ev12");
    }

    private void a1_s7() {
        _send("ev14");
    }

    private void verifyPINCode() {
        // external routine: body supplied by the application
    }
}
