import java.io.*;
import javax.swing.*;

public class MemoryA1 {
    private HashTable variables = new HashTable();

    public MemoryA1() {
        variables.put("errors", new Variable("errors", "int", "0"));
        variables.put("PIN_code_OK", new Variable("PIN_code_OK", "boolean", "false"));
    }
}
