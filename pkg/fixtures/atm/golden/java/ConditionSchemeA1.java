import java.io.*;
import javax.swing.*;

public class ConditionSchemeA1 {
    private HashTable guards = new HashTable();
    private HashTable funcActions = new HashTable();

    public ConditionSchemeA1() {
        guards.put("c_e0a1294f", new Guard("c_e0a1294f", "PIN_code_OK = true"));
        guards.put("c_56d0c7f4", new Guard("c_56d0c7f4", "errors = 3"));
        guards.put("c_d65458cf", new Guard("c_d65458cf", "PIN_code_OK = false and errors < 3"));
        funcActions.put("verifyPINCode", new FuncAction("verifyPINCode", true));
    }
}
