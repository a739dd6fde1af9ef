import java.io.*;
import javax.swing.*;

public class ConditionSchemeMonitor {
    private HashTable guards = new HashTable();
    private HashTable funcActions = new HashTable();

    public ConditionSchemeMonitor() {
    }
}
