import java.io.*;
import javax.swing.*;

public class ConditionSchemeCardReader {
    private HashTable guards = new HashTable();
    private HashTable funcActions = new HashTable();

    public ConditionSchemeCardReader() {
    }
}
