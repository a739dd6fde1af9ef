import java.io.*;
import javax.swing.*;

public class ConditionSchemeKeyboard {
    private HashTable guards = new HashTable();
    private HashTable funcActions = new HashTable();

    public ConditionSchemeKeyboard() {
    }
}
